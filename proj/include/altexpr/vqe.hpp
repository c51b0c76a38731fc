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

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "json.hpp"

#include "altexpr/ansatz.hpp"
#include "altexpr/statevector.hpp"

namespace altexpr {

struct Hamiltonian {
    int num_qubits = 0;
    std::vector<PauliString> terms;

    double energy(const StateVector& state) const;
};

/// sum_i X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}, periodic.
Hamiltonian build_heisenberg_ring(int n);

double energy(const CircuitTemplate& circuit, const ParameterAssignment& params, const Hamiltonian& h);

/// Parameter-shift gradient with respect to the angles.
std::vector<double> gradient(const CircuitTemplate& circuit, const ParameterAssignment& params, const Hamiltonian& h);

/// Mean absolute component.
double gradient_norm(const std::vector<double>& grad);

struct AdamState {
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step = 0;
    std::vector<double> first_moment;
    std::vector<double> second_moment;

    explicit AdamState(std::size_t size, double learning_rate = 0.001);

    /// One descent step on `params` in place.
    void update(std::vector<double>& params, const std::vector<double>& grad);
};

struct VqeTrialRecord {
    AnsatzSpec spec;
    std::uint64_t seed = 0;
    /// Index t holds the value at the parameters after t updates; length
    /// iterations + 1.
    std::vector<double> energies;
    std::vector<double> gradient_norms;
    ParameterAssignment final_params;

    double final_energy() const { return energies.back(); }
};

VqeTrialRecord run_trial(const AnsatzSpec& spec, const Hamiltonian& h, int iterations, std::uint64_t seed,
                         double learning_rate = 0.001);

/// Trial i uses seed derive_stream_seed(master_seed, i). threads = 0 picks
/// hardware concurrency.
std::vector<VqeTrialRecord> run_trials(const AnsatzSpec& spec, const Hamiltonian& h, int trials, int iterations,
                                       std::uint64_t master_seed, double learning_rate = 0.001,
                                       unsigned threads = 0);

struct ProfileEntry {
    int threshold = 0;
    std::size_t reached = 0;              // |I_E|
    std::optional<double> mean;           // absent when no trial reached E
    std::optional<double> stddev;         // absent when fewer than two did
};

struct GradientProfile {
    std::vector<ProfileEntry> entries;

    const ProfileEntry& at(int threshold) const;
};

/// Gradient norm at each trial's first iteration with energy <= E,
/// averaged over the trials that reach E.
GradientProfile gradient_profile(const std::vector<VqeTrialRecord>& records, const std::vector<int>& thresholds);

std::vector<int> default_thresholds();  // -7..0

void write_trajectory_csv(std::ostream& out, const std::vector<VqeTrialRecord>& records);
nlohmann::json profile_to_json(const GradientProfile& profile);
/// Per-iteration mean and standard deviation of the energies plus final
/// energy statistics.
nlohmann::json trajectory_summary(const std::vector<VqeTrialRecord>& records);

}  // namespace altexpr
