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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "altexpr/rng.hpp"
#include "altexpr/statevector.hpp"

namespace altexpr {

enum class AnsatzFamily { TEN, ALT, HEA };

std::string family_name(AnsatzFamily family);
AnsatzFamily parse_family(const std::string& name);

/// Layered ansatz shape. `block_width` (m) is unused for HEA; `block_depth`
/// counts rotation+entangler repetitions inside a block (always 1 for HEA).
struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::ALT;
    int num_qubits = 4;
    int layers = 1;
    int block_width = 2;
    int block_depth = 2;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;

    static AnsatzSpec ten(int layers, int m, int n, std::optional<int> depth = std::nullopt);
    static AnsatzSpec alt(int layers, int m, int n, std::optional<int> depth = std::nullopt);
    static AnsatzSpec hea(int layers, int n);

    /// e.g. "ALT(3,2,4)" or "HEA(4,4)".
    std::string label() const;

    friend bool operator==(const AnsatzSpec&, const AnsatzSpec&) = default;
};

nlohmann::json to_json(const AnsatzSpec& spec);
AnsatzSpec ansatz_spec_from_json(const nlohmann::json& j);

/// Qubit lists of the blocks of every layer (layer-major). For TEN every
/// layer is the fixed m-partition; ALT alternates between the m-partition
/// (odd layers, 1-based) and the m/2-offset partition with half-width edge
/// blocks (even layers); HEA layers are a single all-qubit block.
std::vector<std::vector<std::vector<int>>> block_layout(const AnsatzSpec& spec);

struct Gate {
    enum class Kind { Rotation, Cnot };
    Kind kind;
    int qubit;   // rotation qubit or CNOT control
    int target;  // CNOT target, -1 for rotations
    int slot;    // parameter slot for rotations, -1 for CNOT
    int layer;   // 0-based layer index
};

class CircuitTemplate {
  public:
    explicit CircuitTemplate(AnsatzSpec spec);

    const AnsatzSpec& spec() const { return spec_; }
    const std::vector<Gate>& gates() const { return gates_; }
    int parameter_count() const { return parameter_count_; }
    int num_qubits() const { return spec_.num_qubits; }

  private:
    AnsatzSpec spec_;
    std::vector<Gate> gates_;
    int parameter_count_ = 0;
};

inline CircuitTemplate build_template(const AnsatzSpec& spec) { return CircuitTemplate(spec); }

struct ParameterAssignment {
    std::vector<double> angles;
    std::vector<PauliAxis> axes;
};

/// Angles uniform on [0, 2pi), axes uniform on {X, Y, Z}, all independent.
ParameterAssignment sample_parameters(const CircuitTemplate& circuit, Rng& rng);

/// U_C(theta)|0...0> with rotations exp(-i theta sigma / 2).
StateVector prepare_state(const CircuitTemplate& circuit, const ParameterAssignment& params);

/// State produced when every block is replaced by an independent Haar
/// unitary on its qubits. HEA is treated as one block spanning the circuit.
StateVector sample_block_haar_state(const AnsatzSpec& spec, Rng& rng);

}  // namespace altexpr
