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

#include "altexpr/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "altexpr/rng.hpp"

namespace altexpr {

double Hamiltonian::energy(const StateVector& state) const {
    if (state.num_qubits() != num_qubits) throw std::invalid_argument("Hamiltonian::energy: qubit count mismatch");
    return expectation(state, terms);
}

Hamiltonian build_heisenberg_ring(int n) {
    if (n < 3) throw std::invalid_argument("build_heisenberg_ring: n must be >= 3");
    Hamiltonian h;
    h.num_qubits = n;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
            h.terms.emplace_back(1.0, std::vector<PauliFactor>{{i, a}, {j, a}});
        }
    }
    return h;
}

double energy(const CircuitTemplate& circuit, const ParameterAssignment& params, const Hamiltonian& h) {
    return h.energy(prepare_state(circuit, params));
}

std::vector<double> gradient(const CircuitTemplate& circuit, const ParameterAssignment& params, const Hamiltonian& h) {
    const auto count = static_cast<std::size_t>(circuit.parameter_count());
    if (params.angles.size() != count || params.axes.size() != count) {
        throw std::invalid_argument("gradient: parameter count mismatch");
    }
    constexpr double kShift = std::numbers::pi / 2;
    ParameterAssignment shifted = params;
    std::vector<double> grad(count);
    for (std::size_t p = 0; p < count; ++p) {
        shifted.angles[p] = params.angles[p] + kShift;
        const double plus = energy(circuit, shifted, h);
        shifted.angles[p] = params.angles[p] - kShift;
        const double minus = energy(circuit, shifted, h);
        shifted.angles[p] = params.angles[p];
        grad[p] = (plus - minus) / 2;
    }
    return grad;
}

double gradient_norm(const std::vector<double>& grad) {
    if (grad.empty()) return 0.0;
    double sum = 0.0;
    for (double g : grad) sum += std::abs(g);
    return sum / static_cast<double>(grad.size());
}

AdamState::AdamState(std::size_t size, double learning_rate)
    : learning_rate(learning_rate), first_moment(size, 0.0), second_moment(size, 0.0) {}

void AdamState::update(std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != first_moment.size() || grad.size() != first_moment.size()) {
        throw std::invalid_argument("AdamState::update: size mismatch");
    }
    ++step;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
    for (std::size_t p = 0; p < params.size(); ++p) {
        first_moment[p] = beta1 * first_moment[p] + (1.0 - beta1) * grad[p];
        second_moment[p] = beta2 * second_moment[p] + (1.0 - beta2) * grad[p] * grad[p];
        const double m_hat = first_moment[p] / c1;
        const double v_hat = second_moment[p] / c2;
        params[p] -= learning_rate * m_hat / (std::sqrt(v_hat) + epsilon);
    }
}

VqeTrialRecord run_trial(const AnsatzSpec& spec, const Hamiltonian& h, int iterations, std::uint64_t seed,
                         double learning_rate) {
    if (iterations < 0) throw std::invalid_argument("run_trial: iterations must be >= 0");
    spec.validate();
    if (spec.num_qubits != h.num_qubits) throw std::invalid_argument("run_trial: qubit count mismatch");
    const CircuitTemplate circuit(spec);
    Rng rng(seed);
    VqeTrialRecord rec;
    rec.spec = spec;
    rec.seed = seed;
    rec.final_params = sample_parameters(circuit, rng);
    AdamState adam(rec.final_params.angles.size(), learning_rate);
    rec.energies.reserve(static_cast<std::size_t>(iterations) + 1);
    rec.gradient_norms.reserve(static_cast<std::size_t>(iterations) + 1);
    for (int t = 0;; ++t) {
        const auto grad = gradient(circuit, rec.final_params, h);
        rec.energies.push_back(energy(circuit, rec.final_params, h));
        rec.gradient_norms.push_back(gradient_norm(grad));
        if (t == iterations) break;
        adam.update(rec.final_params.angles, grad);
    }
    return rec;
}

std::vector<VqeTrialRecord> run_trials(const AnsatzSpec& spec, const Hamiltonian& h, int trials, int iterations,
                                       std::uint64_t master_seed, double learning_rate, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
    spec.validate();
    if (spec.num_qubits != h.num_qubits) throw std::invalid_argument("run_trials: qubit count mismatch");
    if (iterations < 0) throw std::invalid_argument("run_trials: iterations must be >= 0");
    std::vector<VqeTrialRecord> records(static_cast<std::size_t>(trials));
    auto run_one = [&](std::size_t i) {
        records[i] = run_trial(spec, h, iterations, derive_stream_seed(master_seed, i), learning_rate);
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
    if (threads <= 1) {
        for (std::size_t i = 0; i < records.size(); ++i) run_one(i);
        return records;
    }
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < records.size(); i += threads) run_one(i);
        });
    }
    workers.clear();
    return records;
}

const ProfileEntry& GradientProfile::at(int threshold) const {
    for (const auto& e : entries) {
        if (e.threshold == threshold) return e;
    }
    throw std::out_of_range("GradientProfile::at: threshold not in profile");
}

GradientProfile gradient_profile(const std::vector<VqeTrialRecord>& records, const std::vector<int>& thresholds) {
    if (records.empty()) throw std::invalid_argument("gradient_profile: no records");
    GradientProfile profile;
    for (int e : thresholds) {
        std::vector<double> values;
        for (const auto& rec : records) {
            const auto it = std::find_if(rec.energies.begin(), rec.energies.end(), [e](double v) { return v <= e; });
            if (it == rec.energies.end()) continue;
            values.push_back(rec.gradient_norms[static_cast<std::size_t>(it - rec.energies.begin())]);
        }
        ProfileEntry entry;
        entry.threshold = e;
        entry.reached = values.size();
        if (!values.empty()) {
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            entry.mean = mean;
            if (values.size() > 1) {
                double ss = 0.0;
                for (double v : values) ss += (v - mean) * (v - mean);
                entry.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
            }
        }
        profile.entries.push_back(entry);
    }
    return profile;
}

std::vector<int> default_thresholds() { return {-7, -6, -5, -4, -3, -2, -1, 0}; }

void write_trajectory_csv(std::ostream& out, const std::vector<VqeTrialRecord>& records) {
    out << "ansatz,trial,seed,iteration,energy,grad_norm\n";
    out.precision(17);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        const auto label = rec.spec.label();
        for (std::size_t t = 0; t < rec.energies.size(); ++t) {
            out << '"' << label << "\"," << i << ',' << rec.seed << ',' << t << ',' << rec.energies[t] << ','
                << rec.gradient_norms[t] << '\n';
        }
    }
}

nlohmann::json profile_to_json(const GradientProfile& profile) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : profile.entries) {
        nlohmann::json row;
        row["threshold"] = e.threshold;
        row["reached"] = e.reached;
        row["mean_grad_norm"] = e.mean ? nlohmann::json(*e.mean) : nlohmann::json(nullptr);
        row["stddev_grad_norm"] = e.stddev ? nlohmann::json(*e.stddev) : nlohmann::json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json trajectory_summary(const std::vector<VqeTrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("trajectory_summary: no records");
    const std::size_t length = records.front().energies.size();
    const double count = static_cast<double>(records.size());
    std::vector<double> mean(length, 0.0), sd(length, 0.0);
    for (const auto& rec : records) {
        if (rec.energies.size() != length) throw std::invalid_argument("trajectory_summary: ragged records");
        for (std::size_t t = 0; t < length; ++t) mean[t] += rec.energies[t] / count;
    }
    for (const auto& rec : records) {
        for (std::size_t t = 0; t < length; ++t) sd[t] += (rec.energies[t] - mean[t]) * (rec.energies[t] - mean[t]);
    }
    for (double& v : sd) v = records.size() > 1 ? std::sqrt(v / (count - 1)) : 0.0;
    std::vector<double> finals;
    for (const auto& rec : records) finals.push_back(rec.final_energy());
    nlohmann::json j;
    j["ansatz"] = to_json(records.front().spec);
    j["trials"] = records.size();
    j["iterations"] = length - 1;
    j["mean_energy"] = mean;
    j["stddev_energy"] = sd;
    j["final_energies"] = finals;
    j["min_final_energy"] = *std::min_element(finals.begin(), finals.end());
    return j;
}

}  // namespace altexpr
