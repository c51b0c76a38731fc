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

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

namespace altexpr {

using Rational = mpq_class;

Rational pow2(long exponent);
Rational rational_pow(const Rational& base, unsigned long exponent);
double to_double(const Rational& q);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// row^T * M
std::vector<Rational> left_multiply(const std::vector<Rational>& row, const RationalMatrix& m);
Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Exact number of the form i^phase * sqrt(radicand) * coefficient with
/// radicand >= 0. Closed under multiplication; holds principal square roots
/// of signed rationals exactly.
class SurdValue {
  public:
    SurdValue() = default;
    SurdValue(int phase, Rational radicand, Rational coefficient);

    static SurdValue rational(const Rational& q);
    /// Principal square root of q: i*sqrt(|q|) for q < 0.
    static SurdValue principal_sqrt(const Rational& q);

    int phase() const { return phase_; }
    const Rational& radicand() const { return radicand_; }
    const Rational& coefficient() const { return coefficient_; }

    bool is_zero() const { return coefficient_ == 0 || radicand_ == 0; }
    bool is_real() const { return is_zero() || phase_ % 2 == 0; }
    /// |value|^2, exact.
    Rational norm() const { return radicand_ * coefficient_ * coefficient_; }

    std::complex<double> to_complex() const;

    /// Exact test of |value - target| < bound for real rational target and
    /// bound > 0.
    bool within(const Rational& target, const Rational& bound) const;

    friend SurdValue operator*(const SurdValue& a, const SurdValue& b);
    friend SurdValue operator*(const SurdValue& a, const Rational& q);

  private:
    void normalize();

    int phase_ = 0;
    Rational radicand_ = 1;
    Rational coefficient_ = 0;
};

}  // namespace altexpr
