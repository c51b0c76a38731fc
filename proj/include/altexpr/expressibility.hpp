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
#include <string>
#include <vector>

#include "altexpr/ansatz.hpp"

namespace altexpr {

enum class SamplingMode {
    Parameterized,  // random angles/axes through the gate template
    HaarBlock,      // every block replaced by an exact Haar unitary
};

std::string mode_name(SamplingMode mode);
SamplingMode parse_mode(const std::string& name);

/// Fidelities |<psi_phi|psi_theta>|^2 of independent state pairs.
struct FidelitySample {
    std::vector<double> values;
    std::string source;  // ansatz label or "Haar"
    std::uint64_t seed = 0;
};

struct FramePotentialEstimate {
    int t = 1;
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t count = 0;
};

struct Deviation {
    double value = 0.0;
    double standard_error = 0.0;
};

struct ExprResult {
    double kl = 0.0;
    int bins = 0;
    std::size_t sample_count = 0;
};

struct HistogramBin {
    double left;
    double right;
    std::size_t count;
    double haar_mass;
};

/// Mean and sample standard deviation of repeated KL trials.
struct KlSummary {
    std::vector<double> trials;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Draws `pairs` independent state pairs. Pairs are generated in fixed-size
/// chunks, each with its own stream derived from `seed`, so the result does
/// not depend on `threads`.
FidelitySample sample_fidelities(const AnsatzSpec& spec, std::size_t pairs, SamplingMode mode,
                                 std::uint64_t seed, unsigned threads = 0);

/// Pairs of independent Haar-random n-qubit states.
FidelitySample sample_haar_fidelities(int num_qubits, std::size_t pairs, std::uint64_t seed,
                                      unsigned threads = 0);

/// Mean of F^t with standard error sd(F^t)/sqrt(count).
FramePotentialEstimate frame_potential(const FidelitySample& sample, int t);

/// Closed-form Haar frame potential for t in {1, 2}.
double haar_frame_potential(int t, int num_qubits);

/// estimate.mean minus the Haar value, with the estimate's standard error.
Deviation expressibility_deviation(const FramePotentialEstimate& estimate, int num_qubits);

/// Exact Haar mass of each equal-width bin on [0, 1]:
/// (1-left)^(N-1) - (1-right)^(N-1), N = 2^n.
std::vector<double> haar_bin_masses(int num_qubits, int bins);

std::vector<HistogramBin> fidelity_histogram(const FidelitySample& sample, int num_qubits, int bins);

/// KL divergence of the binned sample against the binned Haar fidelity law.
ExprResult kl_expressibility(const FidelitySample& sample, int num_qubits, int bins = 1000);

/// `trials` independent KL estimates of `pairs` pairs each; trial i uses
/// stream i of `seed`.
KlSummary repeated_kl(const AnsatzSpec& spec, int trials, std::size_t pairs, int bins, SamplingMode mode,
                      std::uint64_t seed, unsigned threads = 0);

}  // namespace altexpr
