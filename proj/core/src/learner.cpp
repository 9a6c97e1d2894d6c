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

#include "qfs/learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfs/error.hpp"
#include "qfs/stats.hpp"
#include "qfs/walsh.hpp"

namespace qfs {

SampleHistogram::SampleHistogram(int n) : n_(n) {}

void SampleHistogram::add(std::uint64_t index, std::uint64_t count) {
    if (index >= dimension(n_)) throw InputShapeError("histogram index out of range");
    if (count == 0) return;
    counts_[index] += count;
    total_ += count;
}

std::uint64_t SampleHistogram::count(std::uint64_t index) const {
    auto it = counts_.find(index);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> SampleHistogram::top(std::size_t k) const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> v(counts_.begin(), counts_.end());
    const auto by_count = [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    };
    const std::size_t keep = std::min(k, v.size());
    std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(keep), v.end(), by_count);
    v.resize(keep);
    return v;
}

StoppingPolicy StoppingPolicy::fixed(std::uint64_t budget) {
    StoppingPolicy p;
    p.kind = Kind::fixed_budget;
    p.budget = budget;
    return p;
}

StoppingPolicy StoppingPolicy::sequential(double delta, std::uint64_t max_samples) {
    StoppingPolicy p;
    p.kind = Kind::sequential_gap;
    p.delta = delta;
    p.max_samples = max_samples;
    return p;
}

void StoppingPolicy::validate() const {
    if (kind == Kind::fixed_budget) {
        if (budget < 1) throw ParameterError("fixed budget must be >= 1");
        return;
    }
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
    if (max_samples < 1) throw ParameterError("max_samples must be >= 1");
    if (first_round < 1) throw ParameterError("first round must be >= 1");
    if (!(growth > 0.0)) throw ParameterError("round growth must be positive");
}

std::uint64_t sqrt_dimension(int n) {
    // Exact for even n; for odd n, ceil(2^(n/2)) via integer square root.
    const std::uint64_t d = dimension(n);
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d)));
    while (r * r < d) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= d) --r;
    return r;
}

std::uint64_t default_budget(int n, double c) {
    if (!(c > 0.0)) throw ParameterError("budget constant must be positive");
    return static_cast<std::uint64_t>(std::ceil(c * std::sqrt(static_cast<double>(dimension(n)))));
}

std::uint64_t default_estimation_examples(double precision) {
    if (!(precision > 0.0)) throw ParameterError("precision parameter must be positive");
    return static_cast<std::uint64_t>(std::ceil(16.0 * precision * precision));
}

namespace {

struct Leaders {
    std::uint64_t leader = 0;
    std::uint64_t leader_count = 0;
    std::uint64_t runner_up_count = 0;
    bool any = false;
};

// Top two counts; ties resolved towards the smaller index.
Leaders find_leaders(const std::vector<std::uint64_t>& counts, bool exclude_zero) {
    Leaders l;
    for (std::uint64_t i = exclude_zero ? 1 : 0; i < counts.size(); ++i) {
        const auto c = counts[i];
        if (!l.any || c > l.leader_count) {
            if (l.any) l.runner_up_count = l.leader_count;
            l.leader = i;
            l.leader_count = c;
            l.any = true;
        } else if (c > l.runner_up_count) {
            l.runner_up_count = c;
        }
    }
    return l;
}

SampleHistogram to_histogram(int n, const std::vector<std::uint64_t>& counts) {
    SampleHistogram h(n);
    for (std::uint64_t i = 0; i < counts.size(); ++i) h.add(i, counts[i]);
    return h;
}

BornSampler transformed_sampler(const TrainingSet& t, const ResourceLimits& limits, StateStats* stats) {
    const auto state = apply_walsh(encode_training_set(t, limits));
    if (stats) *stats = summarize(state, training_state_zero_tolerance(t.arity(), t.size()));
    return BornSampler(state);
}

}  // namespace

SampleHistogram sample_spectrum(const TrainingSet& t, std::uint64_t k, Rng& rng,
                                const ResourceLimits& limits) {
    if (k < 1) throw ParameterError("sample count must be >= 1");
    const auto sampler = transformed_sampler(t, limits, nullptr);
    std::vector<std::uint64_t> counts(dimension(t.arity()), 0);
    for (std::uint64_t i = 0; i < k; ++i) ++counts[sampler.sample_index(rng)];
    return to_histogram(t.arity(), counts);
}

CoefficientIndex identify_large(const SampleHistogram& h, bool exclude_zero) {
    std::uint64_t best = 0;
    std::uint64_t best_count = 0;
    for (const auto& [index, c] : h.counts()) {
        if (exclude_zero && index == 0) continue;
        if (c > best_count) {  // map order makes the first maximum the smallest index
            best = index;
            best_count = c;
        }
    }
    if (best_count == 0) throw PreconditionError("identify_large: no eligible observations");
    return CoefficientIndex(best, h.arity());
}

SamplingOutcome run_sampling(const TrainingSet& t, const StoppingPolicy& policy, Rng& rng,
                             const SamplingOptions& options) {
    policy.validate();
    const int n = t.arity();
    SamplingOutcome out{CoefficientIndex(0, n), SampleHistogram(n), true, 0, {}};
    const auto sampler = transformed_sampler(t, options.limits, &out.state);
    std::vector<std::uint64_t> counts(dimension(n), 0);
    std::uint64_t total = 0;

    const auto draw = [&](std::uint64_t k) {
        for (std::uint64_t i = 0; i < k; ++i) ++counts[sampler.sample_index(rng)];
        total += k;
        ++out.rounds;
    };

    if (policy.kind == StoppingPolicy::Kind::fixed_budget) {
        draw(policy.budget);
    } else {
        std::uint64_t next = std::min(policy.first_round, policy.max_samples);
        out.converged = false;
        while (true) {
            draw(next);
            const auto l = find_leaders(counts, options.exclude_zero);
            if (l.leader_count > 0 &&
                stats::binomial_lower_bound(l.leader_count, total, policy.delta) >
                    stats::binomial_upper_bound(l.runner_up_count, total, policy.delta)) {
                out.converged = true;
                break;
            }
            if (total >= policy.max_samples) break;
            const auto grow = static_cast<std::uint64_t>(std::ceil(policy.growth * static_cast<double>(total)));
            next = std::min(std::max<std::uint64_t>(grow, 1), policy.max_samples - total);
        }
    }

    out.histogram = to_histogram(n, counts);
    out.identified = identify_large(out.histogram, options.exclude_zero);
    return out;
}

double estimate_coefficient(const ExampleOracle& oracle, const CoefficientIndex& a,
                            std::uint64_t m_est, Rng& rng) {
    require_width(a, oracle.arity(), "estimate_coefficient");
    if (m_est < 1) throw ParameterError("estimation needs at least one example");
    long long sum = 0;
    for (std::uint64_t i = 0; i < m_est; ++i) {
        const auto e = oracle.draw(rng);
        sum += e.y * chi_index(e.x.value(), a.value());
    }
    return static_cast<double>(sum) / static_cast<double>(m_est);
}

namespace {

StoppingPolicy resolve_policy(const LearnerConfig& config, int n) {
    auto policy = config.policy.value_or(StoppingPolicy::fixed(default_budget(n)));
    policy.validate();
    return policy;
}

void sample_into(LearnerResult& r, const TrainingSet& t, const StoppingPolicy& policy,
                 const LearnerConfig& config, Rng& rng) {
    r.n = t.arity();
    r.m = t.size();
    auto sampled = run_sampling(t, policy, rng, {config.exclude_zero, config.limits});
    r.identified = sampled.identified;
    r.samples_used = sampled.histogram.total();
    r.converged = sampled.converged;
    r.state = sampled.state;
    r.histogram = std::move(sampled.histogram);
}

}  // namespace

LearnerResult run_learner(const ExampleOracle& oracle, const LearnerConfig& config, Rng& rng) {
    const int n = oracle.arity();
    config.limits.check(n, "run_learner");
    const auto policy = resolve_policy(config, n);

    LearnerResult r;
    TrainingSet t(n);
    switch (config.training.kind) {
        case TrainingRule::Kind::sqrt_2n:
            r.training_draws = sqrt_dimension(n);
            t = build_training_set(oracle, r.training_draws, rng);
            break;
        case TrainingRule::Kind::fixed:
            r.training_draws = config.training.draws;
            t = build_training_set(oracle, r.training_draws, rng);
            break;
        case TrainingRule::Kind::full_table: {
            auto complete = build_complete_training_set(oracle, rng, config.limits);
            r.training_draws = complete.draws;
            t = std::move(complete.set);
            break;
        }
    }
    sample_into(r, t, policy, config, rng);

    r.estimation_examples = config.estimation_examples;
    r.estimate = estimate_coefficient(oracle, r.identified, config.estimation_examples, rng);
    return r;
}

LearnerResult run_learner(const TrainingSet& t, const LearnerConfig& config, Rng& rng) {
    if (t.empty()) throw PreconditionError("run_learner: empty training set");
    config.limits.check(t.arity(), "run_learner");
    LearnerResult r;
    r.training_draws = t.size();
    sample_into(r, t, resolve_policy(config, t.arity()), config, rng);
    r.estimation_examples = t.size();
    r.estimate = approx_coefficient(t, r.identified);
    return r;
}

WeakHypothesis build_hypothesis(const LearnerResult& r) {
    if (r.estimate == 0.0) {
        throw SignAmbiguousError("coefficient estimate is 0 for index " + r.identified.to_string() +
                                 "; re-estimate with more examples");
    }
    return {r.identified, r.estimate > 0.0 ? 1 : -1};
}

int predict(const WeakHypothesis& h, const Bitstring& x) { return h.sign * chi(h.a, x); }

}  // namespace qfs
