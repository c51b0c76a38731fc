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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "altexpr/statevector.hpp"
#include "altexpr/vqe.hpp"
#include "oracles.hpp"

namespace altexpr {
namespace {

Eigen::VectorXcd as_vector(const StateVector& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

double max_abs_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(StateVector, ZeroStateIsNormalizedBasisVector) {
    StateVector s(3);
    EXPECT_EQ(s.dimension(), 8u);
    EXPECT_EQ(s[0], Complex(1.0, 0.0));
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(StateVector, RejectsBadAmplitudes) {
    EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector(-1), std::invalid_argument);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 0.5;
    EXPECT_THROW(UnitaryMatrix{m}, std::invalid_argument);
    EXPECT_THROW(UnitaryMatrix{ComplexMatrix::Identity(3, 3)}, std::invalid_argument);
}

TEST(Gates, RotationMatchesClosedForm) {
    for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        for (double th : {0.0, 0.3, 1.7, -2.5, 6.0}) {
            const ComplexMatrix expected = std::cos(th / 2) * ComplexMatrix::Identity(2, 2) -
                                           Complex(0, 1) * std::sin(th / 2) * gates::pauli(a).entries();
            EXPECT_LT((gates::rotation(a, th).entries() - expected).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(ApplyGate, IdentityLeavesStateUnchanged) {
    Rng rng(1);
    const auto s = haar_random_state(3, rng);
    const std::vector<int> t{0, 2};
    EXPECT_LT(max_abs_diff(as_vector(applied(s, gates::identity(2), t)), as_vector(s)), 1e-15);
}

TEST(ApplyGate, XOnQubitZeroSetsLowestBit) {
    StateVector s(4);
    const std::vector<int> t{0};
    apply_gate(s, gates::pauli(PauliAxis::X), t);
    EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
}

TEST(ApplyGate, CnotIsAnInvolution) {
    Rng rng(2);
    const auto s = haar_random_state(3, rng);
    const std::vector<int> t{2, 0};
    const auto twice = applied(applied(s, gates::cnot(), t), gates::cnot(), t);
    EXPECT_LT(max_abs_diff(as_vector(twice), as_vector(s)), 1e-14);
}

TEST(ApplyGate, MatchesDenseKroneckerEmbedding) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        const auto s = haar_random_state(n, rng);
        const auto u = haar_random_unitary(2, rng);
        std::vector<int> targets{static_cast<int>(trial % 4), static_cast<int>((trial + 1 + trial / 4) % 4)};
        if (targets[0] == targets[1]) targets[1] = (targets[1] + 1) % 4;
        const auto got = as_vector(applied(s, u, targets));
        const Eigen::VectorXcd want = oracle::embed_gate(u.entries(), targets, n) * as_vector(s);
        EXPECT_LT(max_abs_diff(got, want), 1e-12);
        EXPECT_NEAR(applied(s, u, targets).norm(), 1.0, 1e-10);
    }
}

TEST(ApplyGate, FastPathsAgreeWithGenericPath) {
    Rng rng(4);
    const auto s = haar_random_state(3, rng);
    const auto r = gates::rotation(PauliAxis::Y, 0.77);
    Complex m[2][2] = {{r(0, 0), r(0, 1)}, {r(1, 0), r(1, 1)}};
    StateVector fast = s;
    apply_single_qubit(fast, m, 1);
    apply_cnot(fast, 1, 2);
    StateVector slow = s;
    const std::vector<int> q1{1}, pair{1, 2};
    apply_gate(slow, r, q1);
    apply_gate(slow, gates::cnot(), pair);
    EXPECT_LT(max_abs_diff(as_vector(fast), as_vector(slow)), 1e-14);
}

TEST(ApplyGate, RejectsBadTargets) {
    StateVector s(2);
    const std::vector<int> out{2}, repeated{0, 0}, short_list{0};
    EXPECT_THROW(apply_gate(s, gates::pauli(PauliAxis::X), out), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, gates::cnot(), repeated), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, gates::cnot(), short_list), std::invalid_argument);
}

TEST(Fidelity, BasicValuesAndSymmetry) {
    Rng rng(5);
    const auto a = haar_random_state(3, rng);
    const auto b = haar_random_state(3, rng);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(fidelity(a, b), fidelity(b, a));
    EXPECT_GE(fidelity(a, b), 0.0);
    EXPECT_LE(fidelity(a, b), 1.0);
    EXPECT_THROW(fidelity(a, StateVector(2)), std::invalid_argument);
}

TEST(Haar, UnitariesAreUnitary) {
    Rng rng(6);
    for (int k = 1; k <= 4; ++k) {
        const auto u = haar_random_unitary(k, rng);
        const auto id = ComplexMatrix::Identity(u.entries().rows(), u.entries().cols());
        EXPECT_LT((u.entries().adjoint() * u.entries() - id).cwiseAbs().maxCoeff(), 1e-10);
    }
}

// Entries of a Haar unitary: E|U_ij|^2 = 1/D and, at D = 2, E|U_00|^4 = 1/3.
TEST(Haar, EntryMomentsMatchDesignValues) {
    Rng rng(7);
    for (int k = 1; k <= 3; ++k) {
        const int samples = k == 1 ? 100000 : 20000;
        double s1 = 0, s2 = 0, q1 = 0, q2 = 0;
        for (int i = 0; i < samples; ++i) {
            const auto u = haar_random_unitary(k, rng);
            const double p = std::norm(u(1 % u.dimension(), 0));
            s1 += p;
            s2 += p * p;
            q1 += p * p;
            q2 += p * p * p * p;
        }
        const double mean = s1 / samples;
        const double se = std::sqrt((s2 / samples - mean * mean) / samples);
        EXPECT_LT(std::abs(mean - std::ldexp(1.0, -k)), 3 * se) << "k=" << k;
        if (k == 1) {
            const double m4 = q1 / samples;
            const double se4 = std::sqrt((q2 / samples - m4 * m4) / samples);
            EXPECT_LT(std::abs(m4 - 1.0 / 3.0), 3 * se4);
        }
    }
}

TEST(Haar, StatesAreNormalized) {
    Rng rng(8);
    for (int n = 1; n <= 6; ++n) EXPECT_NEAR(haar_random_state(n, rng).norm(), 1.0, 1e-10);
}

TEST(Expectation, SimpleValues) {
    const PauliString z0(1.0, {{0, PauliAxis::Z}});
    EXPECT_NEAR(expectation(StateVector::basis(1, 1), z0), -1.0, 1e-15);
    const auto h = build_heisenberg_ring(4);
    EXPECT_NEAR(expectation(StateVector(4), h.terms), 4.0, 1e-12);
    const PauliString far(1.0, {{5, PauliAxis::X}});
    EXPECT_THROW(expectation(StateVector(4), far), std::invalid_argument);
}

TEST(Expectation, AgreesWithDenseKroneckerMatrix) {
    Rng rng(9);
    std::uniform_int_distribution<int> axis(0, 3);
    std::normal_distribution<double> coef;
    for (int n = 1; n <= 4; ++n) {
        std::vector<PauliString> terms;
        for (int t = 0; t < 6; ++t) {
            std::vector<PauliFactor> f;
            for (int q = 0; q < n; ++q) {
                const int a = axis(rng);
                if (a < 3) f.push_back({q, static_cast<PauliAxis>(a)});
            }
            terms.emplace_back(coef(rng), f);
        }
        // Oracle: explicit per-term Kronecker products, qubit n-1 leftmost.
        ComplexMatrix dense = ComplexMatrix::Zero(1 << n, 1 << n);
        for (const auto& term : terms) {
            ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
            for (int q = n - 1; q >= 0; --q) {
                ComplexMatrix local = ComplexMatrix::Identity(2, 2);
                for (const auto& f : term.factors()) {
                    if (f.qubit == q) local = gates::pauli(f.axis).entries();
                }
                ComplexMatrix next = Eigen::kroneckerProduct(acc, local);
                acc = next;
            }
            dense += term.coefficient() * acc;
        }
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = haar_random_state(n, rng);
            const auto v = as_vector(s);
            const Complex want = v.adjoint() * dense * v;
            EXPECT_NEAR(expectation(s, terms), want.real(), 1e-9);
            EXPECT_NEAR(want.imag(), 0.0, 1e-10);
        }
        EXPECT_LT((dense_matrix(terms, n) - dense).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Entanglement, BellPairHasLogTwoEntropy) {
    StateVector s(2);
    const std::vector<int> h{0}, pair{0, 1};
    apply_gate(s, gates::rotation(PauliAxis::Y, std::numbers::pi / 2), h);
    apply_gate(s, gates::cnot(), pair);
    EXPECT_NEAR(entanglement_entropy(s, 1), std::log(2.0), 1e-12);
    EXPECT_NEAR(entanglement_entropy(StateVector(2), 1), 0.0, 1e-12);
}

}  // namespace
}  // namespace altexpr
