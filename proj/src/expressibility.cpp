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

#include "altexpr/expressibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace altexpr {

namespace {

constexpr std::size_t kPairsPerChunk = 512;

template <typename PairFn>
FidelitySample sample_pairs(std::size_t pairs, std::uint64_t seed, unsigned threads, std::string source,
                            const PairFn& draw_pair) {
    if (pairs == 0) throw std::invalid_argument("sample_fidelities: need at least one pair");
    FidelitySample sample;
    sample.values.resize(pairs);
    sample.source = std::move(source);
    sample.seed = seed;

    const std::size_t chunks = (pairs + kPairsPerChunk - 1) / kPairsPerChunk;
    auto run_chunk = [&](std::size_t chunk) {
        Rng rng = make_stream(seed, chunk);
        const std::size_t end = std::min(pairs, (chunk + 1) * kPairsPerChunk);
        for (std::size_t i = chunk * kPairsPerChunk; i < end; ++i) sample.values[i] = draw_pair(rng);
    };

    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
        return sample;
    }
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += threads) run_chunk(c);
        });
    }
    workers.clear();
    return sample;
}

}  // namespace

std::string mode_name(SamplingMode mode) {
    return mode == SamplingMode::Parameterized ? "parameterized" : "haar_block";
}

SamplingMode parse_mode(const std::string& name) {
    if (name == "parameterized") return SamplingMode::Parameterized;
    if (name == "haar_block" || name == "haar-block") return SamplingMode::HaarBlock;
    throw std::invalid_argument("unknown sampling mode '" + name + "'");
}

FidelitySample sample_fidelities(const AnsatzSpec& spec, std::size_t pairs, SamplingMode mode,
                                 std::uint64_t seed, unsigned threads) {
    spec.validate();
    if (mode == SamplingMode::HaarBlock) {
        return sample_pairs(pairs, seed, threads, spec.label(), [&](Rng& rng) {
            const StateVector a = sample_block_haar_state(spec, rng);
            const StateVector b = sample_block_haar_state(spec, rng);
            return fidelity(a, b);
        });
    }
    const CircuitTemplate circuit(spec);
    return sample_pairs(pairs, seed, threads, spec.label(), [&](Rng& rng) {
        const StateVector a = prepare_state(circuit, sample_parameters(circuit, rng));
        const StateVector b = prepare_state(circuit, sample_parameters(circuit, rng));
        return fidelity(a, b);
    });
}

FidelitySample sample_haar_fidelities(int num_qubits, std::size_t pairs, std::uint64_t seed, unsigned threads) {
    if (num_qubits < 1) throw std::invalid_argument("sample_haar_fidelities: need n >= 1");
    return sample_pairs(pairs, seed, threads, "Haar", [&](Rng& rng) {
        const StateVector a = haar_random_state(num_qubits, rng);
        const StateVector b = haar_random_state(num_qubits, rng);
        return fidelity(a, b);
    });
}

FramePotentialEstimate frame_potential(const FidelitySample& sample, int t) {
    if (t < 1) throw std::invalid_argument("frame_potential: t must be >= 1");
    if (sample.values.empty()) throw std::invalid_argument("frame_potential: empty sample");
    const auto count = sample.values.size();
    double sum = 0.0;
    for (double f : sample.values) sum += std::pow(f, t);
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (double f : sample.values) {
        const double d = std::pow(f, t) - mean;
        ss += d * d;
    }
    const double sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
    return {t, mean, sd / std::sqrt(static_cast<double>(count)), count};
}

double haar_frame_potential(int t, int num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("haar_frame_potential: need n >= 1");
    const double dim = std::ldexp(1.0, num_qubits);
    switch (t) {
        case 1: return 1.0 / dim;
        case 2: return 1.0 / (std::ldexp(1.0, num_qubits - 1) * (dim + 1.0));
        default: throw std::invalid_argument("haar_frame_potential: only t = 1, 2 have closed forms here");
    }
}

Deviation expressibility_deviation(const FramePotentialEstimate& estimate, int num_qubits) {
    return {estimate.mean - haar_frame_potential(estimate.t, num_qubits), estimate.standard_error};
}

std::vector<double> haar_bin_masses(int num_qubits, int bins) {
    if (bins < 2) throw std::invalid_argument("haar_bin_masses: need at least two bins");
    const double exponent = std::ldexp(1.0, num_qubits) - 1.0;
    auto survival = [&](double x) { return x >= 1.0 ? 0.0 : std::exp(exponent * std::log1p(-x)); };
    std::vector<double> masses(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        const double left = static_cast<double>(b) / bins;
        const double right = static_cast<double>(b + 1) / bins;
        masses[static_cast<std::size_t>(b)] = survival(left) - survival(right);
    }
    return masses;
}

namespace {

std::vector<std::size_t> bin_counts(const FidelitySample& sample, int bins) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double f : sample.values) {
        if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fidelity outside [0, 1]");
        const auto b = std::min(static_cast<std::size_t>(f * bins), static_cast<std::size_t>(bins - 1));
        ++counts[b];
    }
    return counts;
}

}  // namespace

std::vector<HistogramBin> fidelity_histogram(const FidelitySample& sample, int num_qubits, int bins) {
    const auto masses = haar_bin_masses(num_qubits, bins);
    const auto counts = bin_counts(sample, bins);
    std::vector<HistogramBin> out;
    out.reserve(masses.size());
    for (int b = 0; b < bins; ++b) {
        const auto i = static_cast<std::size_t>(b);
        out.push_back({static_cast<double>(b) / bins, static_cast<double>(b + 1) / bins, counts[i], masses[i]});
    }
    return out;
}

ExprResult kl_expressibility(const FidelitySample& sample, int num_qubits, int bins) {
    if (sample.values.empty()) throw std::invalid_argument("kl_expressibility: empty sample");
    const auto masses = haar_bin_masses(num_qubits, bins);
    const auto counts = bin_counts(sample, bins);
    const double total = static_cast<double>(sample.values.size());
    double kl = 0.0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (counts[b] == 0) continue;
        const double q = static_cast<double>(counts[b]) / total;
        // Haar mass underflows only for bins near F = 1 at large n.
        const double p = std::max(masses[b], std::numeric_limits<double>::min());
        kl += q * std::log(q / p);
    }
    return {std::max(kl, 0.0), bins, sample.values.size()};
}

KlSummary repeated_kl(const AnsatzSpec& spec, int trials, std::size_t pairs, int bins, SamplingMode mode,
                      std::uint64_t seed, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("repeated_kl: need at least one trial");
    KlSummary summary;
    for (int t = 0; t < trials; ++t) {
        const auto sample =
            sample_fidelities(spec, pairs, mode, derive_stream_seed(seed, static_cast<std::uint64_t>(t)), threads);
        summary.trials.push_back(kl_expressibility(sample, spec.num_qubits, bins).kl);
    }
    double sum = 0.0;
    for (double v : summary.trials) sum += v;
    summary.mean = sum / trials;
    double ss = 0.0;
    for (double v : summary.trials) ss += (v - summary.mean) * (v - summary.mean);
    summary.stddev = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
    return summary;
}

}  // namespace altexpr
