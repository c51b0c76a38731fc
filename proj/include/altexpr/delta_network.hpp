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

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "altexpr/rational.hpp"

namespace altexpr {

/// Second-moment coefficients of a k-qubit 2-design:
/// lambda_1 = lambda_2 = 1/(4^k - 1), lambda_3 = lambda_4 = -1/((4^k - 1) 2^k).
struct DesignCoefficients {
    int qubits;
    std::array<Rational, 4> lambda;

    explicit DesignCoefficients(int qubits);
    const Rational& operator[](int k) const { return lambda[static_cast<std::size_t>(k - 1)]; }
};

/// One term of a moment formula: coefficient times a product of Kronecker
/// deltas between slot positions.
struct MomentTerm {
    Rational coefficient;
    std::vector<std::pair<int, int>> pairs;
};

/// E[U_{ij} U*_{mk}] = delta_{im} delta_{jk} / 2^k on slots (i, j, m, k).
std::vector<MomentTerm> one_design_moment(int qubits);

/// E[U_{i1 j1} U_{i2 j2} U*_{i1' j1'} U*_{i2' j2'}] = sum_r lambda_r Delta^r on
/// slots (i1, j1, i2, j2, i1', j1', i2', j2'). Terms are ordered r = 1..4.
std::vector<MomentTerm> two_design_expand(int qubits);

/// Slot pairs of Delta^r, r in 1..4.
const std::vector<std::pair<int, int>>& delta_pattern(int r);

using NodeId = int;

/// Product of Kronecker deltas over index variables of a common dimension d,
/// summed over every free variable. Node 0 is the constant index "0": it is
/// never summed, so a component containing it contributes a factor of 1.
class DeltaNetwork {
  public:
    static constexpr NodeId kConstant = 0;

    DeltaNetwork() : parent_{0} {}

    NodeId add_node();
    std::vector<NodeId> add_nodes(std::size_t count);
    void add_equality(NodeId a, NodeId b);

    /// Multiplies in `term`: its coefficient scales the weight and its slot
    /// pairs become equalities between the corresponding `slots`.
    void apply(const MomentTerm& term, std::span<const NodeId> slots);
    void apply_delta(int r, std::span<const NodeId> slots);

    void scale(const Rational& factor) { weight_ *= factor; }
    const Rational& weight() const { return weight_; }
    std::size_t free_node_count() const { return parent_.size() - 1; }

    /// Connected components not containing the constant node.
    int free_components() const;

    /// weight * d^{free_components}.
    Rational contract(long dimension) const;

  private:
    NodeId find(NodeId x) const;

    mutable std::vector<NodeId> parent_;
    Rational weight_ = 1;
};

}  // namespace altexpr
