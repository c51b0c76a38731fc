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
#include <map>
#include <set>
#include <string>
#include <stdexcept>

#include <gtest/gtest.h>

#include "altexpr/ansatz.hpp"

namespace altexpr {
namespace {

// Qubit sets touched by each block's gates, per layer, read off the template.
std::vector<std::set<std::set<int>>> layer_supports(const CircuitTemplate& c) {
    std::vector<std::set<std::set<int>>> out(static_cast<std::size_t>(c.spec().layers));
    // Union-find over qubits within a layer.
    const int n = c.num_qubits();
    for (int layer = 0; layer < c.spec().layers; ++layer) {
        std::vector<int> parent(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) parent[static_cast<std::size_t>(q)] = q;
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
            return x;
        };
        for (const auto& g : c.gates()) {
            if (g.layer == layer && g.kind == Gate::Kind::Cnot) parent[static_cast<std::size_t>(find(g.qubit))] = find(g.target);
        }
        std::map<int, std::set<int>> groups;
        for (const auto& g : c.gates()) {
            if (g.layer == layer) groups[find(g.qubit)].insert(g.qubit);
        }
        for (auto& [root, qs] : groups) out[static_cast<std::size_t>(layer)].insert(qs);
    }
    return out;
}

TEST(AnsatzSpec, ParameterCountsFollowTableAccounting) {
    EXPECT_EQ(build_template(AnsatzSpec::alt(3, 2, 4, 2)).parameter_count(), 24);
    EXPECT_EQ(build_template(AnsatzSpec::hea(4, 4)).parameter_count(), 16);
    EXPECT_EQ(build_template(AnsatzSpec::ten(3, 4, 8, 4)).parameter_count(), 96);
    for (int n : {4, 6, 8}) {
        for (int ell : {2, 3}) {
            for (int m : {2, 4}) {
                if (n % m != 0) continue;
                EXPECT_EQ(build_template(AnsatzSpec::ten(ell, m, n)).parameter_count(), n * ell * m);
                EXPECT_EQ(build_template(AnsatzSpec::alt(ell, m, n)).parameter_count(), n * ell * m);
            }
        }
        EXPECT_EQ(build_template(AnsatzSpec::hea(n, n)).parameter_count(), n * n);
    }
}

TEST(AnsatzSpec, DefaultDepthIsBlockWidth) {
    EXPECT_EQ(AnsatzSpec::alt(2, 4, 8).block_depth, 4);
    EXPECT_EQ(AnsatzSpec::ten(2, 2, 8).block_depth, 2);
}

TEST(AnsatzSpec, ValidationRejectsBadShapes) {
    EXPECT_THROW(AnsatzSpec::alt(2, 3, 6).validate(), std::invalid_argument);
    EXPECT_THROW(AnsatzSpec::alt(2, 4, 6).validate(), std::invalid_argument);
    EXPECT_THROW(AnsatzSpec::ten(2, 8, 4).validate(), std::invalid_argument);
    EXPECT_THROW(AnsatzSpec::ten(0, 2, 4).validate(), std::invalid_argument);
    EXPECT_THROW(AnsatzSpec::hea(2, 1).validate(), std::invalid_argument);
    EXPECT_THROW(CircuitTemplate(AnsatzSpec::alt(2, 3, 6)), std::invalid_argument);
    EXPECT_THROW(parse_family("XYZ"), std::invalid_argument);
}

TEST(AnsatzSpec, JsonRoundTripAndLabel) {
    for (const auto& s : {AnsatzSpec::alt(3, 2, 4, 2), AnsatzSpec::ten(2, 4, 8), AnsatzSpec::hea(4, 4)}) {
        EXPECT_EQ(ansatz_spec_from_json(to_json(s)), s);
    }
    EXPECT_EQ(AnsatzSpec::alt(3, 2, 4).label(), "ALT(3,2,4)");
    EXPECT_EQ(AnsatzSpec::hea(4, 4).label(), "HEA(4,4)");
    EXPECT_TRUE(to_json(AnsatzSpec::hea(4, 4))["m"].is_null());
}

TEST(Layout, AltAlternatesBetweenOffsetPartitions) {
    const auto c = build_template(AnsatzSpec::alt(4, 4, 8));
    const auto s = layer_supports(c);
    const std::set<std::set<int>> odd{{0, 1, 2, 3}, {4, 5, 6, 7}};
    const std::set<std::set<int>> even{{0, 1}, {2, 3, 4, 5}, {6, 7}};
    EXPECT_EQ(s[0], odd);
    EXPECT_EQ(s[1], even);
    EXPECT_EQ(s[2], odd);
    EXPECT_EQ(s[3], even);
}

TEST(Layout, TenKeepsOnePartitionAndHeaConnectsAll) {
    const auto ten = layer_supports(build_template(AnsatzSpec::ten(3, 2, 6)));
    const std::set<std::set<int>> part{{0, 1}, {2, 3}, {4, 5}};
    for (const auto& layer : ten) EXPECT_EQ(layer, part);
    const auto hea = layer_supports(build_template(AnsatzSpec::hea(3, 5)));
    for (const auto& layer : hea) EXPECT_EQ(layer, (std::set<std::set<int>>{{0, 1, 2, 3, 4}}));
}

TEST(Layout, BlockRepeatsRotationsThenLadder) {
    const auto c = build_template(AnsatzSpec::alt(1, 4, 4, 2));
    std::vector<std::string> kinds;
    for (const auto& g : c.gates()) {
        kinds.push_back(g.kind == Gate::Kind::Cnot ? "C" + std::to_string(g.qubit) + std::to_string(g.target)
                                                   : "R" + std::to_string(g.qubit));
    }
    const std::vector<std::string> want{"R0", "R1", "R2", "R3", "C01", "C12", "C23",
                                        "R0", "R1", "R2", "R3", "C01", "C12", "C23"};
    EXPECT_EQ(kinds, want);
}

TEST(SampleParameters, DeterministicAndUniform) {
    const auto c = build_template(AnsatzSpec::alt(3, 2, 4));
    Rng a(42), b(42);
    const auto pa = sample_parameters(c, a);
    const auto pb = sample_parameters(c, b);
    EXPECT_EQ(pa.angles, pb.angles);
    EXPECT_EQ(pa.axes, pb.axes);

    Rng rng(7);
    const auto small = build_template(AnsatzSpec::hea(1, 2));
    const int draws = 50000;
    double sum = 0, sq = 0;
    std::array<int, 3> counts{};
    for (int i = 0; i < draws; ++i) {
        const auto p = sample_parameters(small, rng);
        for (std::size_t k = 0; k < p.angles.size(); ++k) {
            EXPECT_GE(p.angles[k], 0.0);
            EXPECT_LT(p.angles[k], 2 * std::numbers::pi);
            sum += p.angles[k];
            sq += p.angles[k] * p.angles[k];
            ++counts[static_cast<std::size_t>(p.axes[k])];
        }
    }
    const double total = 2.0 * draws;
    const double mean = sum / total;
    EXPECT_LT(std::abs(mean - std::numbers::pi), 3 * std::sqrt((sq / total - mean * mean) / total));
    for (int k : counts) {
        const double f = k / total;
        EXPECT_LT(std::abs(f - 1.0 / 3.0), 3 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / total));
    }
}

TEST(PrepareState, ZeroAnglesOnTenGiveZeroState) {
    const auto c = build_template(AnsatzSpec::ten(3, 2, 6));
    ParameterAssignment p{std::vector<double>(static_cast<std::size_t>(c.parameter_count()), 0.0),
                          std::vector<PauliAxis>(static_cast<std::size_t>(c.parameter_count()), PauliAxis::X)};
    const auto s = prepare_state(c, p);
    EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-14);
    p.angles.pop_back();
    EXPECT_THROW(prepare_state(c, p), std::invalid_argument);
}

TEST(PrepareState, TenOutputsAreProductsAcrossBlockBoundaries) {
    Rng rng(11);
    const auto c = build_template(AnsatzSpec::ten(3, 2, 6));
    for (int i = 0; i < 10; ++i) {
        const auto s = prepare_state(c, sample_parameters(c, rng));
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
        EXPECT_NEAR(entanglement_entropy(s, 2), 0.0, 1e-10);
        EXPECT_NEAR(entanglement_entropy(s, 4), 0.0, 1e-10);
    }
}

TEST(PrepareState, AltEntanglesAcrossBoundaries) {
    Rng rng(12);
    const auto c = build_template(AnsatzSpec::alt(3, 2, 4));
    double max_entropy = 0;
    for (int i = 0; i < 10; ++i) max_entropy = std::max(max_entropy, entanglement_entropy(prepare_state(c, sample_parameters(c, rng)), 2));
    EXPECT_GT(max_entropy, 1e-3);
}

TEST(BlockHaar, TenStatesAreProducts) {
    Rng rng(13);
    for (int i = 0; i < 5; ++i) {
        const auto s = sample_block_haar_state(AnsatzSpec::ten(2, 2, 6), rng);
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
        EXPECT_NEAR(entanglement_entropy(s, 2), 0.0, 1e-10);
        EXPECT_NEAR(entanglement_entropy(s, 4), 0.0, 1e-10);
    }
}

}  // namespace
}  // namespace altexpr
