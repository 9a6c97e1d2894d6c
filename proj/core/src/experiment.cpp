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

#include "qfs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>

#include "qfs/error.hpp"
#include "qfs/io.hpp"
#include "qfs/stats.hpp"
#include "qfs/walsh.hpp"

namespace qfs::harness {
namespace {

using nlohmann::json;

constexpr double kTieTolerance = 1e-12;

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("config field \"") + key + "\" has the wrong type");
    }
}

TrainingRule rule_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "sqrt_2n") return TrainingRule::sqrt_2n();
        if (s == "full_table") return TrainingRule::full_table();
        throw ParseError("unknown m_rule \"" + s + "\"");
    }
    if (j.is_object() && j.contains("fixed") && j["fixed"].is_number_unsigned()) {
        return TrainingRule::fixed(j["fixed"].get<std::uint64_t>());
    }
    throw ParseError("m_rule must be \"sqrt_2n\", \"full_table\" or {\"fixed\": draws}");
}

json rule_to_json(const TrainingRule& r) {
    switch (r.kind) {
        case TrainingRule::Kind::sqrt_2n:
            return "sqrt_2n";
        case TrainingRule::Kind::full_table:
            return "full_table";
        case TrainingRule::Kind::fixed:
            break;
    }
    return {{"fixed", r.draws}};
}

StoppingPolicy policy_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("policy must be an object");
    const auto kind = get_or<std::string>(j, "kind", "sequential_gap");
    if (kind == "fixed_budget") {
        if (!j.contains("budget")) throw ParseError("fixed_budget policy needs \"budget\"");
        return StoppingPolicy::fixed(get_or<std::uint64_t>(j, "budget", 1));
    }
    if (kind == "sequential_gap") {
        auto p = StoppingPolicy::sequential(get_or<double>(j, "delta", 0.95),
                                            get_or<std::uint64_t>(j, "max_samples", 1ULL << 22));
        p.first_round = get_or<std::uint64_t>(j, "first_round", p.first_round);
        p.growth = get_or<double>(j, "growth", p.growth);
        return p;
    }
    throw ParseError("unknown policy kind \"" + kind + "\"");
}

json policy_to_json(const StoppingPolicy& p) {
    if (p.kind == StoppingPolicy::Kind::fixed_budget) return {{"kind", "fixed_budget"}, {"budget", p.budget}};
    return {{"kind", "sequential_gap"},
            {"delta", p.delta},
            {"max_samples", p.max_samples},
            {"first_round", p.first_round},
            {"growth", p.growth}};
}

std::uint64_t ceil_scaled_sqrt(int n, double c) {
    return static_cast<std::uint64_t>(std::ceil(c * std::sqrt(std::ldexp(1.0, n))));
}

}  // namespace

ExperimentConfig ExperimentConfig::large_n_preset() {
    ExperimentConfig c;
    c.n_values = {30};
    c.trials = 1;
    c.m_rule = TrainingRule::sqrt_2n();
    c.policy = StoppingPolicy::fixed(ceil_scaled_sqrt(30, c.budget_c));
    return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ParseError("experiment config must be a JSON object");
    ExperimentConfig c;
    if (j.contains("preset")) {
        const auto preset = get_or<std::string>(j, "preset", "");
        if (preset != "n30") throw ParseError("unknown preset \"" + preset + "\"");
        c = large_n_preset();
    }
    c.n_values = get_or<std::vector<int>>(j, "n_values", c.n_values);
    c.trials = get_or<int>(j, "trials", c.trials);
    if (auto it = j.find("dnf"); it != j.end()) {
        c.dnf_terms = get_or<int>(*it, "terms", c.dnf_terms);
        c.dnf_width = get_or<int>(*it, "width", c.dnf_width);
    }
    if (auto it = j.find("m_rule"); it != j.end()) c.m_rule = rule_from_json(*it);
    c.budget_c = get_or<double>(j, "budget_c", c.budget_c);
    if (auto it = j.find("policy"); it != j.end()) c.policy = policy_from_json(*it);
    c.estimation_examples = get_or<std::uint64_t>(j, "estimation_examples", c.estimation_examples);
    c.exclude_zero = get_or<bool>(j, "exclude_zero", c.exclude_zero);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.workers = get_or<int>(j, "workers", c.workers);
    c.limits.max_arity = get_or<int>(j, "cap", c.limits.max_arity);
    try {
        c.validate();
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (n_values.empty()) throw ParameterError("n_values must not be empty");
    for (int n : n_values) {
        if (n < 1 || n > kMaxBitstringWidth) throw ParameterError("n_values entries must lie in [1, 62]");
        if (dnf_width > n) throw ParameterError("dnf width exceeds n = " + std::to_string(n));
    }
    if (trials < 1) throw ParameterError("trials must be >= 1");
    if (dnf_terms < 1 || dnf_width < 1) throw ParameterError("dnf terms and width must be >= 1");
    if (m_rule.kind == TrainingRule::Kind::fixed && m_rule.draws < 1) throw ParameterError("fixed m must be >= 1");
    if (!(budget_c > 0.0)) throw ParameterError("budget_c must be positive");
    if (estimation_examples < 1) throw ParameterError("estimation_examples must be >= 1");
    if (workers < 1) throw ParameterError("workers must be >= 1");
    policy.validate();
}

ResourceProjection project(int n, double budget_c, const ResourceLimits& limits) {
    ResourceProjection p;
    p.n = n;
    p.training_examples = sqrt_dimension(n);
    p.projected_samples = ceil_scaled_sqrt(n, budget_c);
    p.state_bytes = dense_bytes(n);
    p.state_qubits = n;
    p.preparation_qubits = 2 * n + 1;
    p.within_cap = n <= limits.max_arity;
    return p;
}

json to_json(const ResourceProjection& p) {
    return {{"n", p.n},
            {"training_examples", p.training_examples},
            {"projected_samples", p.projected_samples},
            {"state_bytes", p.state_bytes},
            {"state_gib", static_cast<double>(p.state_bytes) / static_cast<double>(1ULL << 30)},
            {"state_qubits", p.state_qubits},
            {"preparation_qubits", p.preparation_qubits},
            {"within_cap", p.within_cap}};
}

std::vector<ResourceProjection> over_cap(const ExperimentConfig& config) {
    std::vector<ResourceProjection> out;
    for (int n : config.n_values) {
        auto p = project(n, config.budget_c, config.limits);
        if (!p.within_cap) out.push_back(p);
    }
    return out;
}

std::uint64_t trial_seed(std::uint64_t base, int n, int trial) {
    return derive_seed(base, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(trial));
}

double agreement_rate(const BipolarFunction& f, const WeakHypothesis& h) {
    const int n = f.arity();
    require_width(h.a, n, "agreement_rate");
    std::uint64_t agree = 0;
    const std::uint64_t size = dimension(n);
    for (std::uint64_t x = 0; x < size; ++x) {
        if (f.eval_index(x) == h.sign * chi_index(h.a.value(), x)) ++agree;
    }
    return static_cast<double>(agree) / static_cast<double>(size);
}

TrialRecord run_trial(const ExperimentConfig& config, int n, int trial) {
    TrialRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.seed = trial_seed(config.seed, n, trial);
    const auto start = std::chrono::steady_clock::now();
    try {
        Rng rng(rec.seed);
        auto f = std::make_shared<const BipolarFunction>(
            random_dnf(n, config.dnf_terms, config.dnf_width, rng));

        LearnerConfig lc;
        lc.training = config.m_rule;
        lc.policy = config.policy;
        lc.estimation_examples = config.estimation_examples;
        lc.exclude_zero = config.exclude_zero;
        lc.limits = config.limits;
        const auto result = run_learner(ExampleOracle(f), lc, rng);

        rec.m = result.m;
        rec.training_draws = result.training_draws;
        rec.samples_used = result.samples_used;
        rec.converged = result.converged;
        rec.identified = result.identified.to_string();
        rec.estimate = result.estimate;
        rec.nonzero_count = result.state.nonzero;
        rec.max_probability = result.state.max_probability;
        rec.min_nonzero_probability = result.state.min_nonzero_probability;
        rec.min_nonzero_amplitude = result.state.min_nonzero_amplitude;

        // Oracle side: exact spectrum through the classical path.
        const auto spectrum = exact_spectrum(*f, config.limits);
        double best = -1.0;
        std::uint64_t best_index = 0;
        for (std::uint64_t a = config.exclude_zero ? 1 : 0; a < spectrum.size(); ++a) {
            if (std::abs(spectrum[a]) > best + kTieTolerance) {
                best = std::abs(spectrum[a]);
                best_index = a;
            }
        }
        int ties = 0;
        for (std::uint64_t a = config.exclude_zero ? 1 : 0; a < spectrum.size(); ++a) {
            if (std::abs(std::abs(spectrum[a]) - best) <= kTieTolerance) ++ties;
        }
        rec.true_argmax = format_bits(best_index, n);
        rec.true_max_coefficient = spectrum[best_index];
        rec.unique_argmax = ties == 1;
        rec.identified_coefficient = spectrum[result.identified.value()];
        rec.hit = std::abs(rec.identified_coefficient) >= best - kTieTolerance;

        if (result.estimate == 0.0) {
            rec.error = "sign_ambiguous";
            rec.agreement = 0.5;
        } else {
            rec.agreement = agreement_rate(*f, build_hypothesis(result));
        }
    } catch (const Error& e) {
        rec.error = e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    if (const auto over = over_cap(config); !over.empty()) {
        throw ResourceError("n = " + std::to_string(over.front().n) + " exceeds the memory cap n <= " +
                            std::to_string(config.limits.max_arity));
    }
    struct Job {
        int n;
        int trial;
    };
    std::vector<Job> jobs;
    for (int n : config.n_values) {
        for (int t = 0; t < config.trials; ++t) jobs.push_back({n, t});
    }
    std::vector<TrialRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                records[i] = run_trial(config, jobs[i].n, jobs[i].trial);
            } catch (const std::exception& e) {
                records[i].n = jobs[i].n;
                records[i].trial = jobs[i].trial;
                records[i].seed = trial_seed(config.seed, jobs[i].n, jobs[i].trial);
                records[i].error = e.what();
            }
        }
    };
    const auto count = static_cast<std::size_t>(std::max(1, config.workers));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < std::min(count, jobs.size()); ++i) pool.emplace_back(worker);
    }
    std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return a.n != b.n ? a.n < b.n : a.trial < b.trial;
    });
    return records;
}

ScaleSummary summarize(const std::vector<TrialRecord>& records) {
    ScaleSummary s;
    std::vector<int> ns;
    for (const auto& r : records) {
        if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
    }
    std::sort(ns.begin(), ns.end());

    for (int n : ns) {
        ArityStats a;
        a.n = n;
        a.reference_min_amplitude = 1.0 / std::sqrt(std::ldexp(1.0, n));
        std::vector<double> samples, ms, nonzero, ratios;
        int converged = 0, hits = 0, unique_hits = 0, better = 0;
        double agreement = 0.0;
        for (const auto& r : records) {
            if (r.n != n) continue;
            ++a.trials;
            if (r.identified.empty()) {  // no learner output
                ++a.failed;
                continue;
            }
            samples.push_back(static_cast<double>(r.samples_used));
            ms.push_back(static_cast<double>(r.m));
            nonzero.push_back(static_cast<double>(r.nonzero_count));
            ratios.push_back(r.probability_ratio());
            converged += r.converged;
            hits += r.hit;
            if (r.unique_argmax) {
                ++a.unique_argmax_trials;
                unique_hits += r.hit;
            }
            better += r.agreement > 0.5;
            agreement += r.agreement;
            if (static_cast<double>(r.nonzero_count) * static_cast<double>(r.m) < std::ldexp(1.0, n)) {
                a.nonzero_lower_bound_holds = false;
            }
            if (r.min_nonzero_amplitude > 0.0 &&
                (a.min_nonzero_amplitude == 0.0 || r.min_nonzero_amplitude < a.min_nonzero_amplitude)) {
                a.min_nonzero_amplitude = r.min_nonzero_amplitude;
            }
        }
        const auto ok = static_cast<double>(samples.size());
        if (!samples.empty()) {
            a.median_samples = stats::median(samples);
            a.median_m = stats::median(ms);
            a.median_nonzero_count = stats::median(nonzero);
            a.median_probability_ratio = stats::median(ratios);
            a.converged_fraction = converged / ok;
            a.hit_rate = hits / ok;
            a.mean_agreement = agreement / ok;
            a.better_than_half_fraction = better / ok;
        }
        if (a.unique_argmax_trials > 0) a.unique_argmax_hit_rate = static_cast<double>(unique_hits) / a.unique_argmax_trials;
        s.per_n.push_back(a);
    }

    std::vector<double> x, y;
    for (const auto& a : s.per_n) {
        if (a.median_samples > 0.0) {
            x.push_back(a.n);
            y.push_back(std::log2(a.median_samples));
        }
    }
    if (x.size() >= 2) s.slope = stats::fit_slope(x, y);
    return s;
}

std::string records_csv(const std::vector<TrialRecord>& records, bool include_timing) {
    std::string out =
        "schema_version,n,trial,seed,m,training_draws,samples_used,converged,identified,estimate,"
        "true_argmax,true_max_coefficient,identified_coefficient,unique_argmax,hit,agreement,"
        "nonzero_count,max_probability,min_nonzero_probability,probability_ratio,"
        "min_nonzero_amplitude,error";
    if (include_timing) out += ",wall_ms";
    out += '\n';
    const auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c == '\n' ? ' ' : c;
        }
        return q + "\"";
    };
    using io::format_double;
    for (const auto& r : records) {
        out += std::to_string(kSchemaVersion) + ',' + std::to_string(r.n) + ',' + std::to_string(r.trial) + ',' +
               std::to_string(r.seed) + ',' + std::to_string(r.m) + ',' + std::to_string(r.training_draws) + ',' +
               std::to_string(r.samples_used) + ',' + (r.converged ? "1" : "0") + ',' + r.identified + ',' +
               format_double(r.estimate) + ',' + r.true_argmax + ',' + format_double(r.true_max_coefficient) +
               ',' + format_double(r.identified_coefficient) + ',' + (r.unique_argmax ? "1" : "0") + ',' +
               (r.hit ? "1" : "0") + ',' + format_double(r.agreement) + ',' + std::to_string(r.nonzero_count) +
               ',' + format_double(r.max_probability) + ',' + format_double(r.min_nonzero_probability) + ',' +
               format_double(r.probability_ratio()) + ',' + format_double(r.min_nonzero_amplitude) + ',' +
               quote(r.error);
        if (include_timing) out += ',' + format_double(r.wall_ms);
        out += '\n';
    }
    return out;
}

json summary_json(const ExperimentConfig& config, const ScaleSummary& summary) {
    json per_n = json::array();
    for (const auto& a : summary.per_n) {
        per_n.push_back({
            {"n", a.n},
            {"trials", a.trials},
            {"failed", a.failed},
            {"median_samples", a.median_samples},
            {"converged_fraction", a.converged_fraction},
            {"hit_rate", a.hit_rate},
            {"unique_argmax_trials", a.unique_argmax_trials},
            {"unique_argmax_hit_rate", a.unique_argmax_hit_rate},
            {"mean_agreement", a.mean_agreement},
            {"better_than_half_fraction", a.better_than_half_fraction},
            {"median_m", a.median_m},
            {"median_nonzero_count", a.median_nonzero_count},
            {"nonzero_lower_bound_holds", a.nonzero_lower_bound_holds},
            {"median_probability_ratio", a.median_probability_ratio},
            {"min_nonzero_amplitude", a.min_nonzero_amplitude},
            {"reference_min_amplitude", a.reference_min_amplitude},
        });
    }
    return {
        {"schema_version", kSchemaVersion},
        {"config",
         {{"n_values", config.n_values},
          {"trials", config.trials},
          {"dnf", {{"terms", config.dnf_terms}, {"width", config.dnf_width}}},
          {"m_rule", rule_to_json(config.m_rule)},
          {"policy", policy_to_json(config.policy)},
          {"estimation_examples", config.estimation_examples},
          {"exclude_zero", config.exclude_zero},
          {"seed", config.seed}}},
        {"per_n", std::move(per_n)},
        {"slope_log2_samples_vs_n", summary.slope ? json(*summary.slope) : json(nullptr)},
    };
}

}  // namespace qfs::harness
