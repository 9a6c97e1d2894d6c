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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfs/bits.hpp"
#include "qfs/boolean_fn.hpp"
#include "qfs/learner.hpp"

namespace qfs::harness {

inline constexpr int kSchemaVersion = 1;

/// Parameters of a scaling run over random DNF targets.
struct ExperimentConfig {
    std::vector<int> n_values{8, 10, 12, 14, 16};
    int trials = 50;
    int dnf_terms = 4;
    int dnf_width = 3;
    TrainingRule m_rule = TrainingRule::sqrt_2n();
    StoppingPolicy policy = StoppingPolicy::sequential(0.95, 1ULL << 22);
    /// c in the projected sample count ceil(c sqrt(2^n)).
    double budget_c = 8.0;
    std::uint64_t estimation_examples = default_estimation_examples();
    bool exclude_zero = false;
    std::uint64_t seed = 1;
    int workers = 1;
    ResourceLimits limits = ResourceLimits::from_environment();

    /// Throws ParseError on malformed content. Recognised keys: n_values,
    /// trials, dnf {terms, width}, m_rule ("sqrt_2n" | "full_table" |
    /// {"fixed": draws}), policy ({"kind": "fixed_budget", "budget"} |
    /// {"kind": "sequential_gap", "delta", "max_samples"}), budget_c,
    /// estimation_examples, exclude_zero, seed, workers, cap, preset.
    static ExperimentConfig from_json(const nlohmann::json& j);

    /// The large-n configuration (n = 30, m = 2^15) kept as a documented
    /// preset; it only ever produces a resource projection at desk scale.
    static ExperimentConfig large_n_preset();

    /// Throws ParameterError for invalid values (not for the memory cap).
    void validate() const;
};

/// What running one arity would cost.
struct ResourceProjection {
    int n = 0;
    std::uint64_t training_examples = 0;   ///< ceil(sqrt(2^n))
    std::uint64_t projected_samples = 0;   ///< ceil(c sqrt(2^n))
    std::uint64_t state_bytes = 0;         ///< one dense 2^n double vector
    int state_qubits = 0;                  ///< n
    int preparation_qubits = 0;            ///< 2n + 1 with a state-preparation register
    bool within_cap = true;
};

ResourceProjection project(int n, double budget_c, const ResourceLimits& limits);
nlohmann::json to_json(const ResourceProjection& p);

/// Projections for every arity in the config that exceeds the cap.
std::vector<ResourceProjection> over_cap(const ExperimentConfig& config);

struct TrialRecord {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::size_t m = 0;
    std::uint64_t training_draws = 0;
    std::uint64_t samples_used = 0;
    bool converged = false;
    std::string identified;
    double estimate = 0.0;
    // Oracle side, from the exact spectrum only.
    std::string true_argmax;
    double true_max_coefficient = 0.0;
    double identified_coefficient = 0.0;
    bool unique_argmax = false;
    bool hit = false;
    double agreement = 0.0;
    // Simulation side, from the transformed training state.
    std::uint64_t nonzero_count = 0;
    double max_probability = 0.0;
    double min_nonzero_probability = 0.0;
    double min_nonzero_amplitude = 0.0;
    double wall_ms = 0.0;
    /// Empty on success, else a short marker of what failed.
    std::string error;

    [[nodiscard]] double probability_ratio() const {
        return min_nonzero_probability > 0.0 ? max_probability / min_nonzero_probability : 0.0;
    }
};

/// Seed of trial `trial` at arity n: derive_seed(base, (n << 32) | trial).
std::uint64_t trial_seed(std::uint64_t base, int n, int trial);

/// Fraction of all 2^n inputs on which sign * chi_a agrees with f.
double agreement_rate(const BipolarFunction& f, const WeakHypothesis& h);

/// Runs one trial; qfs::Error inside the trial is caught and recorded.
TrialRecord run_trial(const ExperimentConfig& config, int n, int trial);

/// All trials, sorted by (n, trial), independent of the worker count.
/// Throws ResourceError if any arity exceeds the cap.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

struct ArityStats {
    int n = 0;
    int trials = 0;
    int failed = 0;
    double median_samples = 0.0;
    double converged_fraction = 0.0;
    double hit_rate = 0.0;
    int unique_argmax_trials = 0;
    double unique_argmax_hit_rate = 0.0;
    double mean_agreement = 0.0;
    double better_than_half_fraction = 0.0;
    double median_m = 0.0;
    double median_nonzero_count = 0.0;
    bool nonzero_lower_bound_holds = true;  ///< C >= 2^n / m on every trial
    double median_probability_ratio = 0.0;
    double min_nonzero_amplitude = 0.0;
    double reference_min_amplitude = 0.0;   ///< 1 / sqrt(2^n)
};

struct ScaleSummary {
    std::vector<ArityStats> per_n;
    /// Least-squares slope of log2(median samples) against n.
    std::optional<double> slope;
};

ScaleSummary summarize(const std::vector<TrialRecord>& records);

/// Per-trial CSV. Wall time is only written when `include_timing` is set,
/// so default output is byte-identical across runs.
std::string records_csv(const std::vector<TrialRecord>& records, bool include_timing = false);

nlohmann::json summary_json(const ExperimentConfig& config, const ScaleSummary& summary);

}  // namespace qfs::harness
