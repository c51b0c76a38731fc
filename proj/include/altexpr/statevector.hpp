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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "altexpr/rng.hpp"

namespace altexpr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Pure state on n qubits. Qubit 0 is the least significant bit of the
/// amplitude index.
class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    /// Takes ownership of `amplitudes`; length must be a power of two and the
    /// norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    static StateVector basis(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

  private:
    StateVector(int num_qubits, std::vector<Complex> amplitudes);

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Square unitary on k qubits. Row/column index follows the same
/// little-endian convention as StateVector, relative to the target list.
class UnitaryMatrix {
  public:
    /// Throws std::invalid_argument unless `entries` is 2^k x 2^k and
    /// U^dagger U = I within `tolerance` entrywise.
    explicit UnitaryMatrix(ComplexMatrix entries, double tolerance = 1e-10);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
    const ComplexMatrix& entries() const { return entries_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    UnitaryMatrix adjoint() const;

  private:
    int num_qubits_;
    ComplexMatrix entries_;
};

enum class PauliAxis { X, Y, Z };

char axis_symbol(PauliAxis axis);
PauliAxis parse_axis(char symbol);

struct PauliFactor {
    int qubit;
    PauliAxis axis;
};

/// coefficient * prod_k sigma_{axis_k}(qubit_k).
class PauliString {
  public:
    PauliString(double coefficient, std::vector<PauliFactor> factors);

    double coefficient() const { return coefficient_; }
    const std::vector<PauliFactor>& factors() const { return factors_; }
    /// Largest qubit index touched, or -1 for the identity string.
    int max_qubit() const;
    std::string to_string() const;

  private:
    double coefficient_;
    std::vector<PauliFactor> factors_;
};

namespace gates {
UnitaryMatrix identity(int num_qubits);
UnitaryMatrix pauli(PauliAxis axis);
/// exp(-i theta sigma / 2).
UnitaryMatrix rotation(PauliAxis axis, double theta);
/// Two-qubit CNOT with control on target-list position 0.
UnitaryMatrix cnot();
}  // namespace gates

/// Applies `gate` to the listed qubits (target position t of the gate maps to
/// qubit targets[t]). Throws std::invalid_argument on out-of-range or
/// repeated targets, or when the gate size does not match.
void apply_gate(StateVector& state, const UnitaryMatrix& gate, std::span<const int> targets);
StateVector applied(StateVector state, const UnitaryMatrix& gate, std::span<const int> targets);

// Unchecked fast paths used by circuit evaluation.
void apply_single_qubit(StateVector& state, const Complex (&m)[2][2], int qubit);
void apply_cnot(StateVector& state, int control, int target);

Complex inner_product(const StateVector& bra, const StateVector& ket);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Haar-distributed unitary on k qubits: QR of a complex Ginibre matrix with
/// the diagonal of R rotated to the positive reals.
UnitaryMatrix haar_random_unitary(int num_qubits, Rng& rng);

/// Haar-distributed pure state (normalized complex Gaussian vector).
StateVector haar_random_state(int num_qubits, Rng& rng);

/// sum_k c_k <psi|P_k|psi>, exact.
double expectation(const StateVector& state, std::span<const PauliString> terms);
double expectation(const StateVector& state, const PauliString& term);

/// Dense 2^n x 2^n matrix of sum_k c_k P_k built by Kronecker products.
ComplexMatrix dense_matrix(std::span<const PauliString> terms, int num_qubits);

/// Von Neumann entropy (natural log) of the reduced state on qubits
/// [0, low_qubits).
double entanglement_entropy(const StateVector& state, int low_qubits);

}  // namespace altexpr
