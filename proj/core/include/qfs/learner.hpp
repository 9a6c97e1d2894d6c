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
#include <map>
#include <optional>
#include <vector>

#include "qfs/bits.hpp"
#include "qfs/boolean_fn.hpp"
#include "qfs/qstate.hpp"
#include "qfs/random.hpp"

namespace qfs {

/// Observation counts per basis index.
class SampleHistogram {
  public:
    explicit SampleHistogram(int n);

    void add(std::uint64_t index, std::uint64_t count = 1);

    [[nodiscard]] int arity() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
    [[nodiscard]] std::uint64_t count(std::uint64_t index) const;
    [[nodiscard]] const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }

    /// Up to k (index, count) pairs, by count descending then index ascending.
    [[nodiscard]] std::vector<std::pair<std::uint64_t, std::uint64_t>> top(std::size_t k) const;

  private:
    int n_;
    std::uint64_t total_ = 0;
    std::map<std::uint64_t, std::uint64_t> counts_;
};

/// When to stop observing the transformed training state.
struct StoppingPolicy {
    enum class Kind { fixed_budget, sequential_gap };

    Kind kind = Kind::fixed_budget;
    std::uint64_t budget = 1;               ///< fixed_budget: exact sample count
    double delta = 0.95;                    ///< sequential_gap: confidence level in (0, 1)
    std::uint64_t max_samples = 1ULL << 22; ///< sequential_gap: cap
    std::uint64_t first_round = 16;         ///< sequential_gap: size of the first round
    double growth = 0.25;                   ///< each later round adds growth * samples so far

    static StoppingPolicy fixed(std::uint64_t budget);
    static StoppingPolicy sequential(double delta, std::uint64_t max_samples);

    /// Throws ParameterError on an invalid policy.
    void validate() const;
};

/// Default fixed budget ceil(c * sqrt(2^n)).
std::uint64_t default_budget(int n, double c = 8.0);

/// Default classical estimation size ceil(16 p^2) for precision parameter p.
std::uint64_t default_estimation_examples(double precision = 25.0);

struct SamplingOptions {
    /// Ignore index 0 (the mean of f) when choosing leaders.
    bool exclude_zero = false;
    ResourceLimits limits = {};
};

struct SamplingOutcome {
    CoefficientIndex identified;
    SampleHistogram histogram;
    bool converged = true;
    std::uint64_t rounds = 0;
    /// Support summary of the transformed training state (simulation side).
    StateStats state;
};

/// Prepares encode_training_set(t), transforms it once and records k
/// observations; each observation stands for one prepare-transform-observe
/// cycle.
SampleHistogram sample_spectrum(const TrainingSet& t, std::uint64_t k, Rng& rng,
                                const ResourceLimits& limits = {});

/// Index with the largest count, ties to the smallest index. Throws
/// PreconditionError on an empty histogram.
CoefficientIndex identify_large(const SampleHistogram& h, bool exclude_zero = false);

/// Observes until the policy stops. sequential_gap works in rounds and stops
/// once the Clopper-Pearson lower bound of the leader's frequency exceeds the
/// upper bound of the runner-up's, both at level delta; at max_samples it
/// returns the current leader with converged = false.
SamplingOutcome run_sampling(const TrainingSet& t, const StoppingPolicy& policy, Rng& rng,
                             const SamplingOptions& options = {});

/// Plain Monte Carlo mean of y chi_a(x) over m_est fresh examples.
double estimate_coefficient(const ExampleOracle& oracle, const CoefficientIndex& a,
                            std::uint64_t m_est, Rng& rng);

/// How many examples make up the encoded training set.
struct TrainingRule {
    enum class Kind { sqrt_2n, fixed, full_table };

    Kind kind = Kind::sqrt_2n;
    std::uint64_t draws = 0;  ///< fixed only

    static TrainingRule sqrt_2n() { return {Kind::sqrt_2n, 0}; }
    static TrainingRule fixed(std::uint64_t draws) { return {Kind::fixed, draws}; }
    static TrainingRule full_table() { return {Kind::full_table, 0}; }
};

/// ceil(sqrt(2^n)).
std::uint64_t sqrt_dimension(int n);

struct LearnerConfig {
    TrainingRule training = TrainingRule::sqrt_2n();
    /// Defaults to fixed(default_budget(n)).
    std::optional<StoppingPolicy> policy;
    std::uint64_t estimation_examples = default_estimation_examples();
    bool exclude_zero = false;
    ResourceLimits limits = {};
};

struct LearnerResult {
    int n = 0;
    std::size_t m = 0;                    ///< distinct training examples encoded
    std::uint64_t training_draws = 0;     ///< oracle draws spent building the set
    CoefficientIndex identified;
    double estimate = 0.0;
    std::uint64_t samples_used = 0;       ///< quantum observations
    std::uint64_t estimation_examples = 0;
    bool converged = true;
    SampleHistogram histogram{0};
    StateStats state;
};

/// Fourier sampling on a training set drawn from `oracle`, then classical
/// estimation of the chosen coefficient from fresh examples. Only the
/// example oracle is consulted.
LearnerResult run_learner(const ExampleOracle& oracle, const LearnerConfig& config, Rng& rng);

/// Fourier sampling on a given training set. With no oracle available the
/// chosen coefficient is estimated from the same set by direct summation,
/// so estimation_examples = m. config.training is ignored.
LearnerResult run_learner(const TrainingSet& t, const LearnerConfig& config, Rng& rng);

/// sign * chi_a.
struct WeakHypothesis {
    CoefficientIndex a;
    int sign = 1;
};

/// Throws SignAmbiguousError when the estimate is exactly 0.
WeakHypothesis build_hypothesis(const LearnerResult& r);

int predict(const WeakHypothesis& h, const Bitstring& x);

}  // namespace qfs
