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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "altexpr/expressibility.hpp"
#include "altexpr/moment_engine.hpp"

namespace altexpr {
namespace {

void expect_within_3se(const FramePotentialEstimate& est, double target) {
    EXPECT_LT(std::abs(est.mean - target), 3 * est.standard_error)
        << "mean " << est.mean << " target " << target << " se " << est.standard_error;
}

TEST(HaarFramePotential, ClosedFormsMatchExactRationals) {
    for (int n = 1; n <= 12; ++n) {
        EXPECT_EQ(haar_frame_potential(1, n), to_double(haar_first_frame_potential_exact(n)));
        EXPECT_EQ(haar_frame_potential(2, n), to_double(haar_second_frame_potential_exact(n)));
    }
    EXPECT_DOUBLE_EQ(haar_frame_potential(1, 4), 0.0625);
    EXPECT_DOUBLE_EQ(haar_frame_potential(2, 4), 1.0 / 136.0);
    EXPECT_DOUBLE_EQ(haar_frame_potential(1, 1), 0.5);
    EXPECT_THROW(haar_frame_potential(3, 4), std::invalid_argument);
}

// Beta(1, N-1) moments: E[F] = 1/N, E[F^2] = 2/(N(N+1)).
TEST(HaarFramePotential, BetaMomentOracle) {
    for (int n = 1; n <= 12; ++n) {
        const double big_n = std::ldexp(1.0, n);
        EXPECT_NEAR(haar_frame_potential(1, n), 1.0 / big_n, 1e-300);
        EXPECT_NEAR(haar_frame_potential(2, n) / (2.0 / (big_n * (big_n + 1))), 1.0, 1e-14);
    }
}

TEST(FramePotential, AllOnesSample) {
    FidelitySample s{std::vector<double>(50, 1.0), "const", 0};
    for (int t : {1, 2, 3}) {
        const auto e = frame_potential(s, t);
        EXPECT_EQ(e.mean, 1.0);
        EXPECT_EQ(e.standard_error, 0.0);
    }
    EXPECT_THROW(frame_potential(FidelitySample{}, 1), std::invalid_argument);
}

TEST(FramePotential, NonIncreasingInT) {
    const auto s = sample_fidelities(AnsatzSpec::alt(2, 2, 4), 2000, SamplingMode::Parameterized, 3);
    double prev = 1.0;
    for (int t = 1; t <= 5; ++t) {
        const double m = frame_potential(s, t).mean;
        EXPECT_LE(m, prev);
        prev = m;
    }
    for (double f : s.values) {
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}

TEST(Sampling, HaarPairsAgreeWithClosedForms) {
    const auto s = sample_haar_fidelities(4, 40000, 17);
    expect_within_3se(frame_potential(s, 1), 1.0 / 16);
    expect_within_3se(frame_potential(s, 2), 1.0 / 136);
    const auto dev = expressibility_deviation(frame_potential(s, 2), 4);
    EXPECT_LT(std::abs(dev.value), 3 * dev.standard_error);
}

// At N = 2 the Haar fidelity law is uniform; Kolmogorov-Smirnov at the 1% level.
TEST(Sampling, SingleQubitHaarFidelitiesAreUniform) {
    auto values = sample_haar_fidelities(1, 5000, 23).values;
    std::sort(values.begin(), values.end());
    double d = 0;
    const double count = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        d = std::max({d, std::abs(values[i] - i / count), std::abs((i + 1) / count - values[i])});
    }
    EXPECT_LT(d, 1.628 / std::sqrt(count));
}

TEST(Sampling, ResultIsIndependentOfThreadCount) {
    const auto spec = AnsatzSpec::alt(3, 2, 4);
    const auto one = sample_fidelities(spec, 1500, SamplingMode::Parameterized, 99, 1);
    const auto three = sample_fidelities(spec, 1500, SamplingMode::Parameterized, 99, 3);
    EXPECT_EQ(one.values, three.values);
    const auto other = sample_fidelities(spec, 1500, SamplingMode::Parameterized, 100, 1);
    EXPECT_NE(one.values, other.values);
}

TEST(Sampling, FirstMomentIsOneOverDimensionForEveryFamily) {
    for (const auto& spec : {AnsatzSpec::ten(3, 2, 4), AnsatzSpec::alt(3, 2, 4), AnsatzSpec::hea(4, 4)}) {
        for (auto mode : {SamplingMode::Parameterized, SamplingMode::HaarBlock}) {
            const auto s = sample_fidelities(spec, 20000, mode, 5);
            expect_within_3se(frame_potential(s, 1), 1.0 / 16);
        }
    }
}

TEST(Sampling, HaarBlockTenMatchesProductFormula) {
    const auto s = sample_fidelities(AnsatzSpec::ten(2, 2, 4), 40000, SamplingMode::HaarBlock, 8);
    expect_within_3se(frame_potential(s, 2), 0.01);
    const auto dev = expressibility_deviation(frame_potential(s, 2), 4);
    EXPECT_LT(std::abs(dev.value - (0.01 - 1.0 / 136)), 3 * dev.standard_error);
}

TEST(Kl, BinMassesSumToOne) {
    for (int n : {1, 2, 4, 8, 12}) {
        const auto p = haar_bin_masses(n, 1000);
        EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
        for (double v : p) EXPECT_GE(v, 0.0);
    }
}

TEST(Kl, AllOnesSampleGivesLogInverseTopMass) {
    FidelitySample s{std::vector<double>(200, 1.0), "const", 0};
    const auto p = haar_bin_masses(4, 1000);
    EXPECT_NEAR(kl_expressibility(s, 4, 1000).kl, std::log(1.0 / p.back()), 1e-9);
}

TEST(Kl, NonNegativeAndShrinksWithSampleSize) {
    const auto small = sample_haar_fidelities(4, 200, 31);
    const auto large = sample_haar_fidelities(4, 100000, 31);
    const double kl_small = kl_expressibility(small, 4, 1000).kl;
    const double kl_large = kl_expressibility(large, 4, 1000).kl;
    EXPECT_GE(kl_small, 0.0);
    EXPECT_GE(kl_large, 0.0);
    EXPECT_LT(kl_large, kl_small);
    EXPECT_THROW(kl_expressibility(FidelitySample{}, 4, 1000), std::invalid_argument);
    EXPECT_THROW(kl_expressibility(small, 4, 1), std::invalid_argument);
}

TEST(Kl, HistogramCountsAddUp) {
    const auto s = sample_haar_fidelities(3, 500, 2);
    const auto h = fidelity_histogram(s, 3, 50);
    std::size_t total = 0;
    for (const auto& b : h) total += b.count;
    EXPECT_EQ(total, 500u);
    EXPECT_DOUBLE_EQ(h.front().left, 0.0);
    EXPECT_DOUBLE_EQ(h.back().right, 1.0);
}

TEST(Kl, RepeatedTrialsAreReproducible) {
    const auto a = repeated_kl(AnsatzSpec::alt(2, 2, 4), 3, 200, 1000, SamplingMode::Parameterized, 5, 1);
    const auto b = repeated_kl(AnsatzSpec::alt(2, 2, 4), 3, 200, 1000, SamplingMode::Parameterized, 5, 2);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_EQ(a.trials.size(), 3u);
}

}  // namespace
}  // namespace altexpr
