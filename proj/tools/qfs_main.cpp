// Copyright 2026 The qfsample Authors
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

// qfs: command-line front end for the Fourier-sampling simulator.
//
//   qfs spectrum <function.json> [--format csv|json] [--out path]
//   qfs learn (--function f.json | --parity BITS | --random N) [options]
//             (a training-set file passed to --function is encoded as given)
//   qfs scale <config.json> | --preset n30  [--out dir]
//   qfs gen-dnf --n N --terms S --width K [--table]
//   qfs selftest [--seed S]
//
// Exit codes: 0 success, 1 usage or input error, 2 resource cap, 3 learner
// did not converge, 4 selftest failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qfs/boolean_fn.hpp"
#include "qfs/error.hpp"
#include "qfs/experiment.hpp"
#include "qfs/io.hpp"
#include "qfs/learner.hpp"
#include "qfs/selftest.hpp"
#include "qfs/walsh.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kResource = 2,
    kNonConverged = 3,
    kSelftestFailure = 4,
};

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::optional<int> cap;
    int workers = 1;

    qfs::ResourceLimits limits() const {
        auto l = qfs::ResourceLimits::from_environment();
        if (cap) l.max_arity = *cap;
        return l;
    }
};

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        qfs::io::write_text_file(out_path, content);
    }
}

void add_common(CLI::App* cmd, Common& c, bool with_workers = false) {
    cmd->add_option("--seed", c.seed, "Base seed");
    cmd->add_option("--out", c.out, "Output path ('-' or omitted: stdout)");
    cmd->add_option("--cap", c.cap, "Maximum arity for dense 2^n buffers")->check(CLI::Range(0, qfs::kMaxBitstringWidth));
    if (with_workers) cmd->add_option("--workers", c.workers, "Concurrent trials")->check(CLI::PositiveNumber);
}

struct SpectrumArgs {
    std::string input;
    std::string format = "csv";
};

int run_spectrum(const SpectrumArgs& a, const Common& c) {
    const auto f = qfs::io::load_function(a.input);
    const auto spectrum = qfs::exact_spectrum(f, c.limits());
    emit(c.out, a.format == "json" ? qfs::io::spectrum_json(spectrum).dump() + "\n" : qfs::io::spectrum_csv(spectrum));
    return kOk;
}

struct LearnArgs {
    std::string function_file;
    std::string parity;
    std::optional<int> random_n;
    int terms = 4;
    int width = 3;
    std::string m = "sqrt";
    std::string policy;
    std::optional<std::uint64_t> budget;
    double budget_c = 8.0;
    double delta = 0.95;
    std::uint64_t max_samples = 1ULL << 22;
    std::optional<std::uint64_t> m_est;
    double precision = 25.0;
    bool exclude_zero = false;
};

qfs::TrainingRule parse_m_rule(const std::string& m) {
    if (m == "sqrt" || m == "sqrt_2n") return qfs::TrainingRule::sqrt_2n();
    if (m == "full" || m == "full_table") return qfs::TrainingRule::full_table();
    try {
        std::size_t used = 0;
        const auto draws = std::stoull(m, &used);
        if (used == m.size() && draws > 0) return qfs::TrainingRule::fixed(draws);
    } catch (const std::exception&) {
    }
    throw qfs::ParseError("--m must be 'sqrt', 'full' or a positive draw count");
}

int run_learn(const LearnArgs& a, const Common& c) {
    const auto limits = c.limits();
    qfs::Rng rng(c.seed);
    const int sources = !a.function_file.empty() + !a.parity.empty() + a.random_n.has_value();
    if (sources != 1) throw qfs::ParseError("give exactly one of --function/--table/--dnf, --parity, --random");

    std::optional<qfs::BipolarFunction> f;
    std::optional<qfs::TrainingSet> training;
    if (!a.function_file.empty()) {
        const auto j = qfs::io::read_json_file(a.function_file);
        if (j.is_object() && j.contains("examples")) {
            training = qfs::io::training_set_from_json(j);
        } else {
            f = qfs::io::function_from_json(j);
        }
    } else if (!a.parity.empty()) {
        f = qfs::BipolarFunction::parity(qfs::Bitstring::parse(a.parity), limits);
    } else {
        f = qfs::BipolarFunction(qfs::random_dnf(*a.random_n, a.terms, a.width, rng));
    }
    const int n = training ? training->arity() : f->arity();
    limits.check(n, "learn");

    qfs::LearnerConfig config;
    config.training = parse_m_rule(a.m);
    config.limits = limits;
    config.exclude_zero = a.exclude_zero;
    config.estimation_examples = a.m_est.value_or(qfs::default_estimation_examples(a.precision));
    const bool fixed = a.policy == "fixed" || (a.policy.empty() && a.budget);
    if (!a.policy.empty() && a.policy != "fixed" && a.policy != "sequential") {
        throw qfs::ParseError("--policy must be 'fixed' or 'sequential'");
    }
    config.policy = fixed ? qfs::StoppingPolicy::fixed(a.budget.value_or(qfs::default_budget(n, a.budget_c)))
                          : qfs::StoppingPolicy::sequential(a.delta, a.max_samples);

    const auto result = training ? qfs::run_learner(*training, config, rng)
                                 : qfs::run_learner(qfs::ExampleOracle(std::move(*f)), config, rng);
    emit(c.out, qfs::io::learner_result_json(result).dump() + "\n");
    return result.converged ? kOk : kNonConverged;
}

struct ScaleArgs {
    std::string config_file;
    std::string preset;
    bool timing = false;
};

int run_scale(const ScaleArgs& a, const Common& c, const CLI::App& cmd) {
    if (a.config_file.empty() == a.preset.empty()) throw qfs::ParseError("give a config file or --preset");
    nlohmann::json j = a.config_file.empty() ? nlohmann::json{{"preset", a.preset}} : qfs::io::read_json_file(a.config_file);
    auto config = qfs::harness::ExperimentConfig::from_json(j);
    if (cmd.count("--seed")) config.seed = c.seed;
    if (cmd.count("--workers")) config.workers = c.workers;
    if (c.cap) config.limits.max_arity = *c.cap;

    if (const auto over = qfs::harness::over_cap(config); !over.empty()) {
        nlohmann::json projections = nlohmann::json::array();
        for (const auto& p : over) projections.push_back(qfs::harness::to_json(p));
        std::cout << nlohmann::json{{"refused", true}, {"cap", config.limits.max_arity}, {"projections", projections}}.dump(2)
                  << "\n";
        std::cerr << "qfs scale: refusing to run past the memory cap n <= " << config.limits.max_arity << "\n";
        return kResource;
    }

    const auto records = qfs::harness::run_experiment(config);
    const auto summary = qfs::harness::summarize(records);
    const std::filesystem::path dir = c.out.empty() ? "." : c.out;
    std::filesystem::create_directories(dir);
    qfs::io::write_text_file(dir / "records.csv", qfs::harness::records_csv(records, a.timing));
    qfs::io::write_text_file(dir / "summary.json", qfs::harness::summary_json(config, summary).dump(2) + "\n");
    std::cout << "wrote " << records.size() << " records to " << (dir / "records.csv").string() << "\n";
    for (const auto& s : summary.per_n) {
        std::cout << "n=" << s.n << " median_samples=" << s.median_samples << " converged=" << s.converged_fraction
                  << " hit_rate=" << s.hit_rate << " median_prob_ratio=" << s.median_probability_ratio << "\n";
    }
    if (summary.slope) std::cout << "slope log2(median samples) vs n: " << *summary.slope << "\n";
    return kOk;
}

struct GenArgs {
    int n = 8;
    int terms = 4;
    int width = 3;
    bool table = false;
};

int run_gen(const GenArgs& a, const Common& c) {
    qfs::Rng rng(c.seed);
    const auto dnf = qfs::random_dnf(a.n, a.terms, a.width, rng);
    const auto j = a.table ? qfs::io::to_json(qfs::BipolarFunction(dnf).truth_table(c.limits())) : qfs::io::to_json(dnf);
    emit(c.out, j.dump() + "\n");
    return kOk;
}

struct SelftestArgs {
    bool inject_fault = false;
};

int run_selftest(const SelftestArgs& a, const Common& c) {
    const auto results = qfs::harness::run_selftest({c.seed, a.inject_fault});
    const auto report = qfs::harness::format_report(results);
    emit(c.out, report);
    if (!qfs::harness::all_passed(results)) {
        for (const auto& r : results) {
            if (!r.passed) std::cerr << "selftest suite failed: " << r.name << "\n";
        }
        return kSelftestFailure;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Fourier-sampling simulator and learning harness"};
    app.require_subcommand(1);

    Common spectrum_common, learn_common, scale_common, gen_common, selftest_common;

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "Exact Walsh spectrum of a function file");
    spectrum->add_option("input", spectrum_args.input, "DNF or truth-table JSON")->required()->check(CLI::ExistingFile);
    spectrum->add_option("--format", spectrum_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_common(spectrum, spectrum_common);

    LearnArgs learn_args;
    auto* learn = app.add_subcommand("learn", "Run the Fourier-sampling learner");
    learn->add_option("--function,--table,--dnf", learn_args.function_file,
                      "Target function JSON, or a training-set JSON to encode as given");
    learn->add_option("--parity", learn_args.parity, "Target chi_a for mask BITS");
    learn->add_option("--random", learn_args.random_n, "Random DNF target over N variables");
    learn->add_option("--terms", learn_args.terms, "Terms of the random DNF");
    learn->add_option("--width", learn_args.width, "Literals per term of the random DNF");
    learn->add_option("--m", learn_args.m, "Training draws: sqrt, full or a count");
    learn->add_option("--policy", learn_args.policy, "fixed or sequential");
    learn->add_option("--budget", learn_args.budget, "Fixed sample budget (implies --policy fixed)");
    learn->add_option("--budget-c", learn_args.budget_c, "c in the default budget ceil(c sqrt(2^n))");
    learn->add_option("--delta", learn_args.delta, "Sequential gap confidence level");
    learn->add_option("--max-samples", learn_args.max_samples, "Sequential gap sample cap");
    learn->add_option("--m-est", learn_args.m_est, "Examples for the classical estimate");
    learn->add_option("--precision", learn_args.precision, "p in the default m_est = ceil(16 p^2)");
    learn->add_flag("--exclude-zero", learn_args.exclude_zero, "Never report index 0");
    add_common(learn, learn_common);

    ScaleArgs scale_args;
    auto* scale = app.add_subcommand("scale", "Sample-complexity experiment over random DNFs");
    scale->add_option("config", scale_args.config_file, "Experiment config JSON")->check(CLI::ExistingFile);
    scale->add_option("--preset", scale_args.preset, "Named configuration")->check(CLI::IsMember({"n30"}));
    scale->add_flag("--timing", scale_args.timing, "Add a wall_ms column");
    add_common(scale, scale_common, true);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen-dnf", "Generate a random DNF");
    gen->add_option("--n", gen_args.n, "Variables")->required();
    gen->add_option("--terms", gen_args.terms, "Terms");
    gen->add_option("--width", gen_args.width, "Literals per term");
    gen->add_flag("--table", gen_args.table, "Write the truth table instead of the formula");
    add_common(gen, gen_common);

    SelftestArgs selftest_args;
    auto* selftest = app.add_subcommand("selftest", "Run the cross-module property suites");
    selftest->add_flag("--inject-fwht-fault", selftest_args.inject_fault, "Testing: break the transform's sign")
        ->group("");
    add_common(selftest, selftest_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*spectrum) return run_spectrum(spectrum_args, spectrum_common);
        if (*learn) return run_learn(learn_args, learn_common);
        if (*scale) return run_scale(scale_args, scale_common, *scale);
        if (*gen) return run_gen(gen_args, gen_common);
        if (*selftest) return run_selftest(selftest_args, selftest_common);
    } catch (const qfs::ResourceError& e) {
        std::cerr << "qfs: " << e.what() << "\n";
        return kResource;
    } catch (const qfs::Error& e) {
        std::cerr << "qfs: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "qfs: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
