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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "altexpr/ansatz.hpp"
#include "altexpr/expressibility.hpp"

namespace altexpr {

enum class CommandKind {
    FramePotentialAnalytic,
    FramePotentialSample,
    ExpressibilityKl,
    Bounds,
    VqeRun,
    GradientProfile,
};

std::string command_name(CommandKind kind);

struct ExperimentConfig {
    CommandKind command = CommandKind::FramePotentialAnalytic;
    std::optional<std::string> preset;
    std::vector<AnsatzSpec> specs;
    std::size_t pairs = 100000;
    int trials = 10;
    int iterations = 2000;
    int bins = 1000;
    std::uint64_t seed = 0;
    bool seed_generated = false;
    double learning_rate = 0.001;
    SamplingMode mode = SamplingMode::Parameterized;
    std::vector<int> thresholds = {-7, -6, -5, -4, -3, -2, -1, 0};
    std::optional<double> a_exponent;  // corollary bound for `bounds`
    std::filesystem::path out = "results";
    std::filesystem::path input;       // trajectory CSV for gradient-profile
    unsigned threads = 0;

    /// Throws std::invalid_argument when the config does not fit its command.
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Presets: "table1", "fig2-grid", "section4" and "section4-hea6".
ExperimentConfig preset(const std::string& name);

/// Runs the experiment and writes summary.json plus CSV tables under
/// config.out. Progress lines go to `log`.
void run(const ExperimentConfig& config, std::ostream& log);

/// Command-line entry point. Returns the process exit status.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace altexpr
