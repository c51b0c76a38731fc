// Copyright 2026 The altexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "altexpr/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace altexpr {

Rational pow2(long exponent) {
    mpz_class p = 1;
    const auto magnitude = static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), magnitude);
    if (exponent >= 0) return Rational(p);
    Rational q(1, p);
    q.canonicalize();
    return q;
}

Rational rational_pow(const Rational& base, unsigned long exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// mpq_get_d truncates; this rounds to nearest. The quotient is formed with
// 55 or 56 bits and the remainder folded into a sticky bit, so the final
// uint64 -> double conversion rounds correctly.
double to_double(const Rational& q) {
    if (q == 0) return 0.0;
    const mpz_class a = abs(q.get_num());
    const mpz_class& b = q.get_den();
    const long k = 55 - (static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                         static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2)));
    mpz_class num = a, den = b;
    if (k >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    }
    mpz_class quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::uint64_t bits = mpz_get_ui(quot.get_mpz_t());
    if (rem != 0) bits |= 1;
    const double mag = std::ldexp(static_cast<double>(bits), static_cast<int>(-k));
    return q < 0 ? -mag : mag;
}

nlohmann::json rational_to_json(const Rational& q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
    Rational q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    q.canonicalize();
    return q;
}

std::vector<Rational> left_multiply(const std::vector<Rational>& row, const RationalMatrix& m) {
    if (row.size() != m.rows()) throw std::invalid_argument("left_multiply: dimension mismatch");
    std::vector<Rational> out(m.cols(), Rational(0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (row[r] == 0) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] += row[r] * m(r, c);
    }
    return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

namespace {

bool is_square(const mpz_class& z) { return mpz_perfect_square_p(z.get_mpz_t()) != 0; }

/// Sign of (y - r) where y has sign `y_sign` and y^2 = y_sq.
int compare_signed_root(int y_sign, const Rational& y_sq, const Rational& r) {
    const int r_sign = sgn(r);
    if (y_sign == 0) return -r_sign;
    if (y_sign > 0 && r_sign <= 0) return 1;
    if (y_sign < 0 && r_sign >= 0) return -1;
    const int mag = cmp(y_sq, r * r);  // compare |y| with |r|
    return y_sign > 0 ? mag : -mag;
}

}  // namespace

SurdValue::SurdValue(int phase, Rational radicand, Rational coefficient)
    : phase_(((phase % 4) + 4) % 4), radicand_(std::move(radicand)), coefficient_(std::move(coefficient)) {
    if (radicand_ < 0) throw std::invalid_argument("SurdValue: negative radicand");
    normalize();
}

SurdValue SurdValue::rational(const Rational& q) { return SurdValue(0, Rational(1), q); }

SurdValue SurdValue::principal_sqrt(const Rational& q) {
    if (q >= 0) return SurdValue(0, q, Rational(1));
    return SurdValue(1, Rational(-q), Rational(1));
}

void SurdValue::normalize() {
    if (coefficient_ == 0 || radicand_ == 0) {
        phase_ = 0;
        radicand_ = 1;
        coefficient_ = 0;
        return;
    }
    if (coefficient_ < 0) {
        coefficient_ = -coefficient_;
        phase_ = (phase_ + 2) % 4;
    }
    if (is_square(radicand_.get_num()) && is_square(radicand_.get_den())) {
        mpz_class num, den;
        mpz_sqrt(num.get_mpz_t(), radicand_.get_num_mpz_t());
        mpz_sqrt(den.get_mpz_t(), radicand_.get_den_mpz_t());
        Rational root(num, den);
        root.canonicalize();
        coefficient_ *= root;
        radicand_ = 1;
    }
}

std::complex<double> SurdValue::to_complex() const {
    const double mag = std::sqrt(radicand_.get_d()) * coefficient_.get_d();
    switch (phase_) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, -mag};
    }
}

bool SurdValue::within(const Rational& target, const Rational& bound) const {
    if (bound <= 0) return false;
    if (!is_real()) {
        // |iy - t|^2 = y^2 + t^2
        return norm() + target * target < bound * bound;
    }
    const int y_sign = is_zero() ? 0 : (phase_ == 0 ? 1 : -1);
    const Rational y_sq = norm();
    return compare_signed_root(y_sign, y_sq, target - bound) > 0 &&
           compare_signed_root(y_sign, y_sq, target + bound) < 0;
}

SurdValue operator*(const SurdValue& a, const SurdValue& b) {
    return SurdValue(a.phase_ + b.phase_, a.radicand_ * b.radicand_, a.coefficient_ * b.coefficient_);
}

SurdValue operator*(const SurdValue& a, const Rational& q) {
    return SurdValue(a.phase_, a.radicand_, a.coefficient_ * q);
}

}  // namespace altexpr
