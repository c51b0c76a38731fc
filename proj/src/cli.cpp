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

#include "altexpr/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "altexpr/moment_engine.hpp"
#include "altexpr/rng.hpp"
#include "altexpr/vqe.hpp"

namespace altexpr {

namespace {

using nlohmann::json;

bool is_vqe_like(CommandKind kind) { return kind == CommandKind::VqeRun; }

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.precision(17);
    return out;
}

void write_summary(const ExperimentConfig& config, json results) {
    json j;
    j["command"] = command_name(config.command);
    j["config"] = config_to_json(config);
    j["results"] = std::move(results);
    auto out = open_output(config.out / "summary.json");
    out << j.dump(2) << '\n';
}

std::string csv_label(const AnsatzSpec& spec) { return '"' + spec.label() + '"'; }

void run_analytic(const ExperimentConfig& config, std::ostream& log) {
    auto csv = open_output(config.out / "frame_potential_analytic.csv");
    csv << "ansatz,family,ell,m,n,numerator,denominator,value,haar,ratio,bound_ratio\n";
    json rows = json::array();
    for (const auto& spec : config.specs) {
        const int n = spec.num_qubits;
        const int m = spec.block_width;
        const Rational haar = haar_second_frame_potential_exact(n);
        Rational exact;
        std::optional<double> bound;
        if (spec.family == AnsatzFamily::TEN) {
            exact = ten_second_frame_potential_exact(m, n);
        } else {
            exact = alt_second_frame_potential_exact(spec.layers, m, n);
            if (exact < haar) throw std::logic_error("analytic frame potential below the Haar value");
            bound = theorem4_bound(spec.layers, m, n).ratio;
        }
        const Rational ratio = exact / haar;
        csv << csv_label(spec) << ',' << family_name(spec.family) << ',' << spec.layers << ',' << m << ',' << n << ','
            << exact.get_num().get_str() << ',' << exact.get_den().get_str() << ',' << to_double(exact) << ','
            << to_double(haar) << ',' << to_double(ratio) << ',';
        if (bound) csv << *bound;
        csv << '\n';
        json row;
        row["ansatz"] = to_json(spec);
        row["exact"] = rational_to_json(exact);
        row["value"] = to_double(exact);
        row["haar"] = to_double(haar);
        row["ratio"] = to_double(ratio);
        row["bound_ratio"] = bound ? json(*bound) : json(nullptr);
        rows.push_back(std::move(row));
        log << spec.label() << " F2/F2_Haar = " << to_double(ratio) << '\n';
    }
    write_summary(config, rows);
}

void run_sample(const ExperimentConfig& config, std::ostream& log) {
    auto csv = open_output(config.out / "frame_potential_sample.csv");
    csv << "ansatz,mode,t,mean,stderr,count,haar,deviation,seed\n";
    json rows = json::array();
    for (std::size_t i = 0; i < config.specs.size(); ++i) {
        const auto& spec = config.specs[i];
        const auto seed = derive_stream_seed(config.seed, i);
        const auto sample = sample_fidelities(spec, config.pairs, config.mode, seed, config.threads);
        for (int t : {1, 2}) {
            const auto est = frame_potential(sample, t);
            const auto dev = expressibility_deviation(est, spec.num_qubits);
            const double haar = haar_frame_potential(t, spec.num_qubits);
            csv << csv_label(spec) << ',' << mode_name(config.mode) << ',' << t << ',' << est.mean << ','
                << est.standard_error << ',' << est.count << ',' << haar << ',' << dev.value << ',' << seed << '\n';
            json row;
            row["ansatz"] = to_json(spec);
            row["mode"] = mode_name(config.mode);
            row["t"] = t;
            row["mean"] = est.mean;
            row["stderr"] = est.standard_error;
            row["count"] = est.count;
            row["haar"] = haar;
            row["deviation"] = dev.value;
            row["seed"] = seed;
            rows.push_back(std::move(row));
            log << spec.label() << " F" << t << " = " << est.mean << " +- " << est.standard_error << " (Haar " << haar
                << ")\n";
        }
    }
    write_summary(config, rows);
}

void run_kl(const ExperimentConfig& config, std::ostream& log) {
    auto csv = open_output(config.out / "kl_trials.csv");
    csv << "ansatz,n,parameters,trial,kl,seed\n";
    auto hist = open_output(config.out / "histograms.csv");
    hist << "ansatz,bin_left,bin_right,count,haar_mass\n";
    json rows = json::array();
    for (std::size_t i = 0; i < config.specs.size(); ++i) {
        const auto& spec = config.specs[i];
        const auto seed = derive_stream_seed(config.seed, i);
        const auto summary = repeated_kl(spec, config.trials, config.pairs, config.bins, config.mode, seed,
                                         config.threads);
        const int params = CircuitTemplate(spec).parameter_count();
        for (std::size_t t = 0; t < summary.trials.size(); ++t) {
            csv << csv_label(spec) << ',' << spec.num_qubits << ',' << params << ',' << t << ',' << summary.trials[t]
                << ',' << derive_stream_seed(seed, t) << '\n';
        }
        // Trial 0 regenerated for the histogram export.
        const auto sample = sample_fidelities(spec, config.pairs, config.mode, derive_stream_seed(seed, 0), config.threads);
        for (const auto& b : fidelity_histogram(sample, spec.num_qubits, config.bins)) {
            hist << csv_label(spec) << ',' << b.left << ',' << b.right << ',' << b.count << ',' << b.haar_mass << '\n';
        }
        json row;
        row["ansatz"] = to_json(spec);
        row["parameters"] = params;
        row["seed"] = seed;
        row["trials"] = summary.trials;
        row["mean"] = summary.mean;
        row["stddev"] = summary.stddev;
        rows.push_back(std::move(row));
        log << spec.label() << " Expr = " << summary.mean << " +- " << summary.stddev << '\n';
    }
    write_summary(config, rows);
}

void run_bounds(const ExperimentConfig& config, std::ostream& log) {
    auto csv = open_output(config.out / "bounds.csv");
    csv << "ansatz,ell,m,n,exact_ratio,bound_ratio,bound_absolute\n";
    json rows = json::array();
    for (const auto& spec : config.specs) {
        const int n = spec.num_qubits;
        const auto bound = theorem4_bound(spec.layers, spec.block_width, n);
        const double exact = to_double(alt_second_frame_potential_exact(spec.layers, spec.block_width, n) /
                                       haar_second_frame_potential_exact(n));
        csv << csv_label(spec) << ',' << spec.layers << ',' << spec.block_width << ',' << n << ',' << exact << ','
            << bound.ratio << ',' << bound.absolute << '\n';
        json row;
        row["ansatz"] = to_json(spec);
        row["exact_ratio"] = exact;
        row["bound_ratio"] = bound.ratio;
        row["bound_absolute"] = bound.absolute;
        if (config.a_exponent) {
            const auto cor = corollary1_bound(*config.a_exponent, n, spec.layers);
            json c;
            // The corollary describes m = 2 a log2 n, which need not be spec.m.
            const double implied_m = 2 * *config.a_exponent * std::log2(static_cast<double>(n));
            c["a"] = *config.a_exponent;
            c["implied_m"] = implied_m;
            c["matches_spec_m"] = std::abs(implied_m - spec.block_width) < 1e-9;
            c["condition"] = cor.condition;
            if (cor.applicable) {
                c["ratio"] = cor.ratio;
                c["absolute"] = cor.absolute;
            } else {
                c["status"] = "condition violated";
            }
            row["corollary"] = std::move(c);
            log << spec.label() << " corollary: "
                << (cor.applicable ? std::to_string(cor.ratio) : std::string("condition violated")) << '\n';
        }
        rows.push_back(std::move(row));
        log << spec.label() << " exact ratio " << exact << " <= bound " << bound.ratio << '\n';
    }
    write_summary(config, rows);
}

void write_profile_csv(std::ostream& csv, const std::string& label, const GradientProfile& profile) {
    for (const auto& e : profile.entries) {
        csv << '"' << label << "\"," << e.threshold << ',' << e.reached << ',';
        if (e.mean) csv << *e.mean;
        csv << ',';
        if (e.stddev) csv << *e.stddev;
        csv << '\n';
    }
}

void run_vqe(const ExperimentConfig& config, std::ostream& log) {
    auto traj = open_output(config.out / "trajectories.csv");
    auto prof = open_output(config.out / "gradient_profile.csv");
    prof << "ansatz,threshold,reached,mean_grad_norm,stddev_grad_norm\n";
    json rows = json::array();
    bool header = true;
    for (std::size_t i = 0; i < config.specs.size(); ++i) {
        const auto& spec = config.specs[i];
        const auto h = build_heisenberg_ring(spec.num_qubits);
        const auto seed = derive_stream_seed(config.seed, i);
        const auto records =
            run_trials(spec, h, config.trials, config.iterations, seed, config.learning_rate, config.threads);
        std::ostringstream block;
        write_trajectory_csv(block, records);
        std::string text = block.str();
        if (!header) text.erase(0, text.find('\n') + 1);
        header = false;
        traj << text;
        const auto profile = gradient_profile(records, config.thresholds);
        write_profile_csv(prof, spec.label(), profile);
        json row = trajectory_summary(records);
        row["seed"] = seed;
        row["gradient_profile"] = profile_to_json(profile);
        log << spec.label() << " min final energy " << row["min_final_energy"].get<double>() << '\n';
        rows.push_back(std::move(row));
    }
    write_summary(config, rows);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += ch;
        }
    }
    cells.push_back(cell);
    return cells;
}

void run_profile(const ExperimentConfig& config, std::ostream& log) {
    std::ifstream in(config.input);
    if (!in) throw std::runtime_error("cannot read " + config.input.string());
    std::string line;
    std::getline(in, line);
    if (split_csv_line(line).size() != 6) throw std::runtime_error("unexpected trajectory CSV header");
    // label -> trial -> record
    std::map<std::string, std::map<long, VqeTrialRecord>> grouped;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) throw std::runtime_error("malformed trajectory CSV row: " + line);
        if (!grouped.count(cells[0])) order.push_back(cells[0]);
        auto& rec = grouped[cells[0]][std::stol(cells[1])];
        const auto t = std::stoul(cells[3]);
        if (t != rec.energies.size()) throw std::runtime_error("trajectory CSV rows out of order");
        rec.seed = std::stoull(cells[2]);
        rec.energies.push_back(std::stod(cells[4]));
        rec.gradient_norms.push_back(std::stod(cells[5]));
    }
    if (order.empty()) throw std::runtime_error("trajectory CSV has no rows");
    auto prof = open_output(config.out / "gradient_profile.csv");
    prof << "ansatz,threshold,reached,mean_grad_norm,stddev_grad_norm\n";
    json rows = json::array();
    for (const auto& label : order) {
        std::vector<VqeTrialRecord> records;
        for (auto& [trial, rec] : grouped[label]) records.push_back(std::move(rec));
        const auto profile = gradient_profile(records, config.thresholds);
        write_profile_csv(prof, label, profile);
        json row;
        row["ansatz"] = label;
        row["trials"] = records.size();
        row["gradient_profile"] = profile_to_json(profile);
        rows.push_back(std::move(row));
        log << label << ": profile over " << records.size() << " trials\n";
    }
    write_summary(config, rows);
}

AnsatzSpec spec_from_flags(const std::string& family, int n, int m, int ell, std::optional<int> depth) {
    switch (parse_family(family)) {
        case AnsatzFamily::TEN:
            return AnsatzSpec::ten(ell, m, n, depth);
        case AnsatzFamily::ALT:
            return AnsatzSpec::alt(ell, m, n, depth);
        case AnsatzFamily::HEA:
            return AnsatzSpec::hea(ell, n);
    }
    throw std::invalid_argument("unknown ansatz family");
}

}  // namespace

std::string command_name(CommandKind kind) {
    switch (kind) {
        case CommandKind::FramePotentialAnalytic:
            return "frame-potential analytic";
        case CommandKind::FramePotentialSample:
            return "frame-potential sample";
        case CommandKind::ExpressibilityKl:
            return "expressibility kl";
        case CommandKind::Bounds:
            return "bounds";
        case CommandKind::VqeRun:
            return "vqe run";
        case CommandKind::GradientProfile:
            return "gradient-profile";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    if (command == CommandKind::GradientProfile) {
        if (input.empty()) throw std::invalid_argument("gradient-profile needs --input");
    } else if (specs.empty()) {
        throw std::invalid_argument(command_name(command) + ": no ansatz given");
    }
    for (const auto& spec : specs) {
        spec.validate();
        const bool analytic = command == CommandKind::FramePotentialAnalytic || command == CommandKind::Bounds;
        if (analytic && spec.family == AnsatzFamily::HEA) {
            throw std::invalid_argument(command_name(command) + ": no analytic value for HEA");
        }
        if (analytic && spec.family == AnsatzFamily::ALT && spec.layers != 2 && spec.layers != 3) {
            throw std::invalid_argument(command_name(command) + ": ALT needs ell in {2, 3}");
        }
        if (command == CommandKind::Bounds && spec.family != AnsatzFamily::ALT) {
            throw std::invalid_argument("bounds: only ALT has a bound");
        }
    }
    if (pairs < 1) throw std::invalid_argument("--pairs must be >= 1");
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (iterations < 0) throw std::invalid_argument("--iterations must be >= 0");
    if (bins < 2) throw std::invalid_argument("--bins must be >= 2");
    if (is_vqe_like(command)) {
        for (const auto& spec : specs) {
            if (spec.num_qubits < 3) throw std::invalid_argument("vqe run: the ring needs n >= 3");
        }
    }
}

json config_to_json(const ExperimentConfig& config) {
    json j;
    j["command"] = command_name(config.command);
    j["preset"] = config.preset ? json(*config.preset) : json(nullptr);
    json specs = json::array();
    for (const auto& s : config.specs) specs.push_back(to_json(s));
    j["ansatzes"] = std::move(specs);
    j["pairs"] = config.pairs;
    j["trials"] = config.trials;
    j["iterations"] = config.iterations;
    j["bins"] = config.bins;
    j["seed"] = config.seed;
    j["seed_generated"] = config.seed_generated;
    j["seed_derivation"] = "splitmix64 counter streams: item i uses derive(seed, i)";
    j["learning_rate"] = config.learning_rate;
    j["mode"] = mode_name(config.mode);
    j["thresholds"] = config.thresholds;
    j["a_exponent"] = config.a_exponent ? json(*config.a_exponent) : json(nullptr);
    j["input"] = config.input.string();
    return j;
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.preset = name;
    if (name == "table1") {
        c.command = CommandKind::ExpressibilityKl;
        c.trials = 10;
        c.pairs = 200;
        c.bins = 1000;
        for (int n : {4, 6}) {
            for (int ell : {2, 3}) c.specs.push_back(AnsatzSpec::ten(ell, 2, n));
            for (int ell : {2, 3}) c.specs.push_back(AnsatzSpec::alt(ell, 2, n));
            c.specs.push_back(AnsatzSpec::hea(n, n));
        }
        for (auto family : {AnsatzFamily::TEN, AnsatzFamily::ALT}) {
            for (int ell : {2, 3}) {
                for (int m : {2, 4}) {
                    c.specs.push_back(family == AnsatzFamily::TEN ? AnsatzSpec::ten(ell, m, 8) : AnsatzSpec::alt(ell, m, 8));
                }
            }
        }
        c.specs.push_back(AnsatzSpec::hea(8, 8));
        return c;
    }
    if (name == "fig2-grid") {
        c.command = CommandKind::FramePotentialAnalytic;
        for (int m : {2, 4, 10}) {
            for (int k = 1; k <= 10; ++k) {
                c.specs.push_back(AnsatzSpec::ten(2, m, k * m));
                c.specs.push_back(AnsatzSpec::alt(2, m, k * m));
                c.specs.push_back(AnsatzSpec::alt(3, m, k * m));
            }
        }
        return c;
    }
    if (name == "section4" || name == "section4-hea6") {
        c.command = CommandKind::VqeRun;
        c.trials = 100;
        c.iterations = 2000;
        c.learning_rate = 0.001;
        if (name == "section4") {
            c.specs = {AnsatzSpec::ten(3, 2, 4), AnsatzSpec::alt(3, 2, 4), AnsatzSpec::hea(4, 4)};
        } else {
            c.specs = {AnsatzSpec::hea(6, 4)};
        }
        return c;
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

void run(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    std::filesystem::create_directories(config.out);
    switch (config.command) {
        case CommandKind::FramePotentialAnalytic:
            return run_analytic(config, log);
        case CommandKind::FramePotentialSample:
            return run_sample(config, log);
        case CommandKind::ExpressibilityKl:
            return run_kl(config, log);
        case CommandKind::Bounds:
            return run_bounds(config, log);
        case CommandKind::VqeRun:
            return run_vqe(config, log);
        case CommandKind::GradientProfile:
            return run_profile(config, log);
    }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Expressibility and trainability of layered parameterized circuits"};
    app.require_subcommand(1);

    struct Flags {
        std::string ansatz = "ALT";
        int n = 4;
        int m = 2;
        int ell = 3;
        int block_depth = 0;
        std::size_t pairs = 0;
        int trials = 0;
        int iterations = 0;
        int bins = 0;
        std::uint64_t seed = 0;
        double learning_rate = 0.0;
        double a_exponent = 0.0;
        std::string mode;
        std::string out = "results";
        std::string preset;
        std::string input;
        unsigned threads = 0;
    } f;
    std::map<std::string, CLI::Option*> opts;

    auto add_flags = [&](CLI::App* sub) {
        opts["ansatz"] = sub->add_option("--ansatz", f.ansatz, "TEN, ALT or HEA");
        opts["n"] = sub->add_option("--n", f.n, "number of qubits");
        opts["m"] = sub->add_option("--m", f.m, "block width");
        opts["ell"] = sub->add_option("--ell", f.ell, "number of layers");
        opts["block-depth"] = sub->add_option("--block-depth", f.block_depth, "repetitions inside a block (default m)");
        opts["pairs"] = sub->add_option("--pairs", f.pairs, "state pairs per estimate");
        opts["trials"] = sub->add_option("--trials", f.trials, "independent trials");
        opts["iterations"] = sub->add_option("--iterations", f.iterations, "optimizer iterations");
        opts["bins"] = sub->add_option("--bins", f.bins, "histogram bins");
        opts["seed"] = sub->add_option("--seed", f.seed, "master seed (generated and recorded when absent)");
        opts["lr"] = sub->add_option("--learning-rate", f.learning_rate, "Adam learning rate");
        opts["a"] = sub->add_option("--a", f.a_exponent, "corollary exponent a in m = 2a log2 n");
        opts["mode"] = sub->add_option("--mode", f.mode, "parameterized or haar_block");
        opts["out"] = sub->add_option("--out", f.out, "output directory");
        opts["preset"] = sub->add_option("--preset", f.preset, "table1, fig2-grid, section4, section4-hea6");
        opts["input"] = sub->add_option("--input", f.input, "trajectory CSV written by vqe run");
        opts["threads"] = sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
    };

    std::map<CLI::App*, CommandKind> leaves;
    auto* fp = app.add_subcommand("frame-potential", "second frame potentials");
    fp->require_subcommand(1);
    leaves[fp->add_subcommand("analytic", "exact transfer-matrix value")] = CommandKind::FramePotentialAnalytic;
    leaves[fp->add_subcommand("sample", "Monte-Carlo estimate")] = CommandKind::FramePotentialSample;
    auto* ex = app.add_subcommand("expressibility", "KL expressibility");
    ex->require_subcommand(1);
    leaves[ex->add_subcommand("kl", "repeated KL estimates")] = CommandKind::ExpressibilityKl;
    leaves[app.add_subcommand("bounds", "upper bounds on the ALT frame potential")] = CommandKind::Bounds;
    auto* vq = app.add_subcommand("vqe", "Heisenberg-ring VQE");
    vq->require_subcommand(1);
    leaves[vq->add_subcommand("run", "optimize and record trajectories")] = CommandKind::VqeRun;
    leaves[app.add_subcommand("gradient-profile", "first-passage gradient profile from trajectories")] =
        CommandKind::GradientProfile;

    // Every leaf shares one flag set; only the parsed leaf's options count.
    std::map<CLI::App*, std::map<std::string, CLI::Option*>> leaf_opts;
    for (auto& [sub, kind] : leaves) {
        add_flags(sub);
        leaf_opts[sub] = opts;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        CLI::App* leaf = nullptr;
        for (auto& [sub, kind] : leaves) {
            if (sub->parsed()) leaf = sub;
        }
        if (leaf == nullptr) throw std::invalid_argument("no command given");
        const CommandKind kind = leaves[leaf];
        auto given = [&](const std::string& name) { return leaf_opts[leaf][name]->count() > 0; };

        ExperimentConfig config;
        if (given("preset")) {
            config = preset(f.preset);
            if (config.command != kind) {
                throw std::invalid_argument("preset '" + f.preset + "' belongs to '" + command_name(config.command) +
                                            "'");
            }
        } else {
            config.command = kind;
            if (kind == CommandKind::ExpressibilityKl) config.pairs = 200;
            if (kind == CommandKind::VqeRun) config.trials = 100;
        }
        const bool spec_given =
            given("ansatz") || given("n") || given("m") || given("ell") || given("block-depth");
        if (kind != CommandKind::GradientProfile && (spec_given || !given("preset"))) {
            const std::optional<int> depth = given("block-depth") ? std::optional<int>(f.block_depth) : std::nullopt;
            config.specs = {spec_from_flags(f.ansatz, f.n, f.m, f.ell, depth)};
        }
        if (given("pairs")) config.pairs = f.pairs;
        if (given("trials")) config.trials = f.trials;
        if (given("iterations")) config.iterations = f.iterations;
        if (given("bins")) config.bins = f.bins;
        if (given("lr")) config.learning_rate = f.learning_rate;
        if (given("a")) config.a_exponent = f.a_exponent;
        if (given("mode")) config.mode = parse_mode(f.mode);
        if (given("input")) config.input = f.input;
        if (given("threads")) config.threads = f.threads;
        config.out = f.out;
        if (given("seed")) {
            config.seed = f.seed;
        } else {
            std::random_device rd;
            config.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
            config.seed_generated = true;
        }
        run(config, out);
        out << "wrote " << (config.out / "summary.json").string() << " (seed " << config.seed << ")\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace altexpr
