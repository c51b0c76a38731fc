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

#include "altexpr/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace altexpr {

namespace {

constexpr double kNormTolerance = 1e-10;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count out of range");
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (!is_power_of_two(amplitudes.size())) {
        throw std::invalid_argument("StateVector: amplitude count is not a power of two");
    }
    const int n = std::countr_zero(amplitudes.size());
    StateVector s(n, std::move(amplitudes));
    if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
    return s;
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw std::invalid_argument("StateVector: basis index out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto& a : amplitudes_) acc += std::norm(a);
    return std::sqrt(acc);
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries, double tolerance) : entries_(std::move(entries)) {
    const auto dim = static_cast<std::size_t>(entries_.rows());
    if (entries_.rows() != entries_.cols() || !is_power_of_two(dim)) {
        throw std::invalid_argument("UnitaryMatrix: shape must be 2^k x 2^k");
    }
    num_qubits_ = std::countr_zero(dim);
    const ComplexMatrix residual = entries_.adjoint() * entries_ - ComplexMatrix::Identity(entries_.rows(), entries_.cols());
    if (residual.cwiseAbs().maxCoeff() > tolerance) {
        throw std::invalid_argument("UnitaryMatrix: matrix is not unitary");
    }
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(entries_.adjoint()); }

char axis_symbol(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    return '?';
}

PauliAxis parse_axis(char symbol) {
    switch (symbol) {
        case 'X': case 'x': return PauliAxis::X;
        case 'Y': case 'y': return PauliAxis::Y;
        case 'Z': case 'z': return PauliAxis::Z;
        default: throw std::invalid_argument(std::string("unknown Pauli axis '") + symbol + "'");
    }
}

PauliString::PauliString(double coefficient, std::vector<PauliFactor> factors)
    : coefficient_(coefficient), factors_(std::move(factors)) {
    for (std::size_t a = 0; a < factors_.size(); ++a) {
        if (factors_[a].qubit < 0) throw std::invalid_argument("PauliString: negative qubit index");
        for (std::size_t b = a + 1; b < factors_.size(); ++b) {
            if (factors_[a].qubit == factors_[b].qubit) {
                throw std::invalid_argument("PauliString: repeated qubit index");
            }
        }
    }
}

int PauliString::max_qubit() const {
    int m = -1;
    for (const auto& f : factors_) m = std::max(m, f.qubit);
    return m;
}

std::string PauliString::to_string() const {
    std::ostringstream out;
    out << coefficient_;
    for (const auto& f : factors_) out << ' ' << axis_symbol(f.axis) << f.qubit;
    return out.str();
}

namespace gates {

UnitaryMatrix identity(int num_qubits) {
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    return UnitaryMatrix(ComplexMatrix::Identity(d, d));
}

UnitaryMatrix pauli(PauliAxis axis) {
    ComplexMatrix m(2, 2);
    const Complex i{0.0, 1.0};
    switch (axis) {
        case PauliAxis::X: m << 0, 1, 1, 0; break;
        case PauliAxis::Y: m << 0, -i, i, 0; break;
        case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix rotation(PauliAxis axis, double theta) {
    const Complex i{0.0, 1.0};
    const ComplexMatrix s = pauli(axis).entries();
    ComplexMatrix m = std::cos(theta / 2) * ComplexMatrix::Identity(2, 2) - i * std::sin(theta / 2) * s;
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix cnot() {
    // Local index bit 0 is the control, bit 1 the target.
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(2, 2) = 1;
    m(3, 1) = 1;
    m(1, 3) = 1;
    return UnitaryMatrix(std::move(m));
}

}  // namespace gates

void apply_gate(StateVector& state, const UnitaryMatrix& gate, std::span<const int> targets) {
    const int n = state.num_qubits();
    const int k = gate.num_qubits();
    if (static_cast<int>(targets.size()) != k) {
        throw std::invalid_argument("apply_gate: gate size does not match target count");
    }
    std::size_t target_mask = 0;
    for (int t : targets) {
        if (t < 0 || t >= n) throw std::invalid_argument("apply_gate: target out of range");
        const std::size_t bit = std::size_t{1} << t;
        if (target_mask & bit) throw std::invalid_argument("apply_gate: repeated target");
        target_mask |= bit;
    }

    const std::size_t local_dim = std::size_t{1} << k;
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t local = 0; local < local_dim; ++local) {
        for (int t = 0; t < k; ++t) {
            if ((local >> t) & 1U) offsets[local] |= std::size_t{1} << targets[t];
        }
    }

    auto amps = state.amplitudes();
    const ComplexMatrix& u = gate.entries();
    std::vector<Complex> in(local_dim);
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & target_mask) continue;
        for (std::size_t c = 0; c < local_dim; ++c) in[c] = amps[base | offsets[c]];
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < local_dim; ++c) {
                acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            amps[base | offsets[r]] = acc;
        }
    }
}

StateVector applied(StateVector state, const UnitaryMatrix& gate, std::span<const int> targets) {
    apply_gate(state, gate, targets);
    return state;
}

void apply_single_qubit(StateVector& state, const Complex (&m)[2][2], int qubit) {
    auto amps = state.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

void apply_cnot(StateVector& state, int control, int target) {
    auto amps = state.amplitudes();
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    }
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
    if (bra.num_qubits() != ket.num_qubits()) {
        throw std::invalid_argument("inner_product: qubit count mismatch");
    }
    Complex acc{0.0, 0.0};
    const auto a = bra.amplitudes();
    const auto b = ket.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

UnitaryMatrix haar_random_unitary(int num_qubits, Rng& rng) {
    if (num_qubits < 1) throw std::invalid_argument("haar_random_unitary: need at least one qubit");
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex{re, im};
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index c = 0; c < d; ++c) {
        const Complex diag = r(c, c);
        const double mag = std::abs(diag);
        q.col(c) *= (mag > 0.0 ? diag / mag : Complex{1.0, 0.0});
    }
    return UnitaryMatrix(std::move(q), 1e-9);
}

StateVector haar_random_state(int num_qubits, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    double norm2 = 0.0;
    for (auto& a : amps) {
        const double re = normal(rng);
        const double im = normal(rng);
        a = Complex{re, im};
        norm2 += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return StateVector::from_amplitudes(std::move(amps));
}

double expectation(const StateVector& state, const PauliString& term) {
    if (term.max_qubit() >= state.num_qubits()) {
        throw std::invalid_argument("expectation: Pauli index out of range");
    }
    std::size_t flip = 0;
    std::size_t sign_mask = 0;
    int num_y = 0;
    for (const auto& f : term.factors()) {
        const std::size_t bit = std::size_t{1} << f.qubit;
        if (f.axis != PauliAxis::Z) flip |= bit;
        if (f.axis != PauliAxis::X) sign_mask |= bit;
        if (f.axis == PauliAxis::Y) ++num_y;
    }
    // P|b> = i^{#Y} (-1)^{|b & sign_mask|} |b ^ flip>
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto amps = state.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const Complex v = std::conj(amps[b ^ flip]) * amps[b];
        acc += (std::popcount(b & sign_mask) & 1) ? -v : v;
    }
    return term.coefficient() * (kIPow[num_y % 4] * acc).real();
}

double expectation(const StateVector& state, std::span<const PauliString> terms) {
    double total = 0.0;
    for (const auto& t : terms) total += expectation(state, t);
    return total;
}

ComplexMatrix dense_matrix(std::span<const PauliString> terms, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (const auto& term : terms) {
        if (term.max_qubit() >= num_qubits) throw std::invalid_argument("dense_matrix: Pauli index out of range");
        ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
        for (int q = num_qubits - 1; q >= 0; --q) {
            ComplexMatrix local = ComplexMatrix::Identity(2, 2);
            for (const auto& f : term.factors()) {
                if (f.qubit == q) local = gates::pauli(f.axis).entries();
            }
            ComplexMatrix next(acc.rows() * 2, acc.cols() * 2);
            for (Eigen::Index r = 0; r < acc.rows(); ++r) {
                for (Eigen::Index c = 0; c < acc.cols(); ++c) {
                    next.block(2 * r, 2 * c, 2, 2) = acc(r, c) * local;
                }
            }
            acc = std::move(next);
        }
        total += term.coefficient() * acc;
    }
    return total;
}

double entanglement_entropy(const StateVector& state, int low_qubits) {
    const int n = state.num_qubits();
    if (low_qubits < 0 || low_qubits > n) throw std::invalid_argument("entanglement_entropy: bad cut");
    const Eigen::Index rows = Eigen::Index{1} << low_qubits;
    const Eigen::Index cols = Eigen::Index{1} << (n - low_qubits);
    ComplexMatrix m(rows, cols);
    const auto amps = state.amplitudes();
    for (Eigen::Index hi = 0; hi < cols; ++hi) {
        for (Eigen::Index lo = 0; lo < rows; ++lo) {
            m(lo, hi) = amps[static_cast<std::size_t>(lo + rows * hi)];
        }
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double p = svd.singularValues()(i) * svd.singularValues()(i);
        if (p > 1e-15) entropy -= p * std::log(p);
    }
    return entropy;
}

}  // namespace altexpr
