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

#include "altexpr/ansatz.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace altexpr {

std::string family_name(AnsatzFamily family) {
    switch (family) {
        case AnsatzFamily::TEN: return "TEN";
        case AnsatzFamily::ALT: return "ALT";
        case AnsatzFamily::HEA: return "HEA";
    }
    return "?";
}

AnsatzFamily parse_family(const std::string& name) {
    std::string upper;
    for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (upper == "TEN") return AnsatzFamily::TEN;
    if (upper == "ALT") return AnsatzFamily::ALT;
    if (upper == "HEA") return AnsatzFamily::HEA;
    throw std::invalid_argument("unknown ansatz family '" + name + "'");
}

void AnsatzSpec::validate() const {
    if (num_qubits < 2) throw std::invalid_argument("ansatz: need n >= 2");
    if (layers < 1) throw std::invalid_argument("ansatz: need at least one layer");
    if (block_depth < 1) throw std::invalid_argument("ansatz: block depth must be >= 1");
    if (family == AnsatzFamily::HEA) return;
    if (block_width < 2 || block_width % 2 != 0) throw std::invalid_argument("ansatz: m must be even and >= 2");
    if (block_width > num_qubits) throw std::invalid_argument("ansatz: m must not exceed n");
    if (num_qubits % block_width != 0) throw std::invalid_argument("ansatz: n must be a multiple of m");
}

AnsatzSpec AnsatzSpec::ten(int layers, int m, int n, std::optional<int> depth) {
    return AnsatzSpec{AnsatzFamily::TEN, n, layers, m, depth.value_or(m)};
}

AnsatzSpec AnsatzSpec::alt(int layers, int m, int n, std::optional<int> depth) {
    return AnsatzSpec{AnsatzFamily::ALT, n, layers, m, depth.value_or(m)};
}

AnsatzSpec AnsatzSpec::hea(int layers, int n) { return AnsatzSpec{AnsatzFamily::HEA, n, layers, 0, 1}; }

std::string AnsatzSpec::label() const {
    if (family == AnsatzFamily::HEA) {
        return "HEA(" + std::to_string(layers) + "," + std::to_string(num_qubits) + ")";
    }
    return family_name(family) + "(" + std::to_string(layers) + "," + std::to_string(block_width) + "," +
           std::to_string(num_qubits) + ")";
}

nlohmann::json to_json(const AnsatzSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    j["n"] = spec.num_qubits;
    j["layers"] = spec.layers;
    if (spec.family == AnsatzFamily::HEA) {
        j["m"] = nullptr;
    } else {
        j["m"] = spec.block_width;
    }
    j["block_depth"] = spec.block_depth;
    return j;
}

AnsatzSpec ansatz_spec_from_json(const nlohmann::json& j) {
    AnsatzSpec spec;
    spec.family = parse_family(j.at("family").get<std::string>());
    spec.num_qubits = j.at("n").get<int>();
    spec.layers = j.at("layers").get<int>();
    if (spec.family == AnsatzFamily::HEA) {
        spec.block_width = 0;
        spec.block_depth = j.contains("block_depth") ? j.at("block_depth").get<int>() : 1;
    } else {
        spec.block_width = j.at("m").get<int>();
        spec.block_depth = j.contains("block_depth") && !j.at("block_depth").is_null()
                               ? j.at("block_depth").get<int>()
                               : spec.block_width;
    }
    spec.validate();
    return spec;
}

namespace {

constexpr int kMaxSimulatedQubits = 24;

void check_simulable(int n) {
    if (n > kMaxSimulatedQubits) throw std::invalid_argument("ansatz: simulation limited to n <= 24");
}

std::vector<int> qubit_range(int first, int count) {
    std::vector<int> qs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) qs[static_cast<std::size_t>(i)] = first + i;
    return qs;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> block_layout(const AnsatzSpec& spec) {
    spec.validate();
    const int n = spec.num_qubits;
    const int m = spec.block_width;
    std::vector<std::vector<std::vector<int>>> layout;
    for (int layer = 0; layer < spec.layers; ++layer) {
        std::vector<std::vector<int>> blocks;
        const bool offset = spec.family == AnsatzFamily::ALT && layer % 2 == 1;
        if (spec.family == AnsatzFamily::HEA) {
            blocks.push_back(qubit_range(0, n));
        } else if (!offset) {
            for (int b = 0; b < n / m; ++b) blocks.push_back(qubit_range(b * m, m));
        } else {
            blocks.push_back(qubit_range(0, m / 2));
            for (int b = 0; b + 1 < n / m; ++b) blocks.push_back(qubit_range(m / 2 + b * m, m));
            blocks.push_back(qubit_range(n - m / 2, m / 2));
        }
        layout.push_back(std::move(blocks));
    }
    return layout;
}

CircuitTemplate::CircuitTemplate(AnsatzSpec spec) : spec_(spec) {
    const auto layout = block_layout(spec_);
    const int depth = spec_.family == AnsatzFamily::HEA ? 1 : spec_.block_depth;
    for (int layer = 0; layer < static_cast<int>(layout.size()); ++layer) {
        for (const auto& block : layout[static_cast<std::size_t>(layer)]) {
            for (int rep = 0; rep < depth; ++rep) {
                for (int q : block) gates_.push_back({Gate::Kind::Rotation, q, -1, parameter_count_++, layer});
                for (std::size_t i = 0; i + 1 < block.size(); ++i) {
                    gates_.push_back({Gate::Kind::Cnot, block[i], block[i + 1], -1, layer});
                }
            }
        }
    }
}

ParameterAssignment sample_parameters(const CircuitTemplate& circuit, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> axis(0, 2);
    ParameterAssignment p;
    const auto count = static_cast<std::size_t>(circuit.parameter_count());
    p.angles.resize(count);
    p.axes.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        p.angles[i] = angle(rng);
        p.axes[i] = static_cast<PauliAxis>(axis(rng));
    }
    return p;
}

StateVector prepare_state(const CircuitTemplate& circuit, const ParameterAssignment& params) {
    const auto count = static_cast<std::size_t>(circuit.parameter_count());
    if (params.angles.size() != count || params.axes.size() != count) {
        throw std::invalid_argument("prepare_state: parameter count mismatch");
    }
    check_simulable(circuit.num_qubits());
    StateVector state(circuit.num_qubits());
    const Complex i{0.0, 1.0};
    for (const Gate& g : circuit.gates()) {
        if (g.kind == Gate::Kind::Cnot) {
            apply_cnot(state, g.qubit, g.target);
            continue;
        }
        const auto slot = static_cast<std::size_t>(g.slot);
        const double c = std::cos(params.angles[slot] / 2);
        const double s = std::sin(params.angles[slot] / 2);
        Complex m[2][2];
        switch (params.axes[slot]) {
            case PauliAxis::X:
                m[0][0] = c; m[0][1] = -i * s;
                m[1][0] = -i * s; m[1][1] = c;
                break;
            case PauliAxis::Y:
                m[0][0] = c; m[0][1] = -s;
                m[1][0] = s; m[1][1] = c;
                break;
            case PauliAxis::Z:
                m[0][0] = Complex{c, -s}; m[0][1] = 0.0;
                m[1][0] = 0.0; m[1][1] = Complex{c, s};
                break;
        }
        apply_single_qubit(state, m, g.qubit);
    }
    return state;
}

StateVector sample_block_haar_state(const AnsatzSpec& spec, Rng& rng) {
    spec.validate();
    check_simulable(spec.num_qubits);
    StateVector state(spec.num_qubits);
    if (spec.family == AnsatzFamily::HEA) {
        const auto all = qubit_range(0, spec.num_qubits);
        apply_gate(state, haar_random_unitary(spec.num_qubits, rng), all);
        return state;
    }
    for (const auto& layer : block_layout(spec)) {
        for (const auto& block : layer) {
            apply_gate(state, haar_random_unitary(static_cast<int>(block.size()), rng), block);
        }
    }
    return state;
}

}  // namespace altexpr
