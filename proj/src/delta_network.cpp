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

#include "altexpr/delta_network.hpp"

#include <stdexcept>

namespace altexpr {

DesignCoefficients::DesignCoefficients(int qubits) : qubits(qubits) {
    if (qubits < 1) throw std::invalid_argument("DesignCoefficients: need at least one qubit");
    const Rational dim_sq_minus_one = pow2(2L * qubits) - 1;
    const Rational positive = 1 / dim_sq_minus_one;
    const Rational negative = -1 / (dim_sq_minus_one * pow2(qubits));
    lambda = {positive, positive, negative, negative};
}

const std::vector<std::pair<int, int>>& delta_pattern(int r) {
    // Slots: 0 i1, 1 j1, 2 i2, 3 j2, 4 i1', 5 j1', 6 i2', 7 j2'.
    static const std::array<std::vector<std::pair<int, int>>, 4> kPatterns = {{
        {{0, 4}, {1, 5}, {2, 6}, {3, 7}},
        {{0, 6}, {1, 7}, {2, 4}, {3, 5}},
        {{0, 4}, {1, 7}, {2, 6}, {3, 5}},
        {{0, 6}, {1, 5}, {2, 4}, {3, 7}},
    }};
    if (r < 1 || r > 4) throw std::invalid_argument("delta_pattern: r must be in 1..4");
    return kPatterns[static_cast<std::size_t>(r - 1)];
}

std::vector<MomentTerm> one_design_moment(int qubits) {
    if (qubits < 1) throw std::invalid_argument("one_design_moment: need at least one qubit");
    return {MomentTerm{1 / pow2(qubits), {{0, 2}, {1, 3}}}};
}

std::vector<MomentTerm> two_design_expand(int qubits) {
    const DesignCoefficients lambda(qubits);
    std::vector<MomentTerm> terms;
    for (int r = 1; r <= 4; ++r) terms.push_back({lambda[r], delta_pattern(r)});
    return terms;
}

NodeId DeltaNetwork::add_node() {
    parent_.push_back(static_cast<NodeId>(parent_.size()));
    return static_cast<NodeId>(parent_.size() - 1);
}

std::vector<NodeId> DeltaNetwork::add_nodes(std::size_t count) {
    std::vector<NodeId> ids(count);
    for (auto& id : ids) id = add_node();
    return ids;
}

NodeId DeltaNetwork::find(NodeId x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) {
        auto& p = parent_[static_cast<std::size_t>(x)];
        p = parent_[static_cast<std::size_t>(p)];
        x = p;
    }
    return x;
}

void DeltaNetwork::add_equality(NodeId a, NodeId b) {
    const auto size = static_cast<NodeId>(parent_.size());
    if (a < 0 || b < 0 || a >= size || b >= size) throw std::invalid_argument("DeltaNetwork: unknown node");
    NodeId ra = find(a);
    NodeId rb = find(b);
    if (ra == rb) return;
    // Keep the constant as the root of its component.
    if (ra == kConstant) std::swap(ra, rb);
    parent_[static_cast<std::size_t>(ra)] = rb;
}

void DeltaNetwork::apply(const MomentTerm& term, std::span<const NodeId> slots) {
    for (const auto& [a, b] : term.pairs) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(std::max(a, b)) >= slots.size()) {
            throw std::invalid_argument("DeltaNetwork::apply: slot index out of range");
        }
        add_equality(slots[static_cast<std::size_t>(a)], slots[static_cast<std::size_t>(b)]);
    }
    weight_ *= term.coefficient;
}

void DeltaNetwork::apply_delta(int r, std::span<const NodeId> slots) {
    apply(MomentTerm{Rational(1), delta_pattern(r)}, slots);
}

int DeltaNetwork::free_components() const {
    int count = 0;
    for (std::size_t i = 1; i < parent_.size(); ++i) {
        const auto id = static_cast<NodeId>(i);
        if (find(id) == id) ++count;
    }
    return count;
}

Rational DeltaNetwork::contract(long dimension) const {
    if (dimension < 1) throw std::invalid_argument("DeltaNetwork::contract: dimension must be positive");
    return weight_ * rational_pow(Rational(dimension), static_cast<unsigned long>(free_components()));
}

}  // namespace altexpr
