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


#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "qfs/error.hpp"
#include "qfs/experiment.hpp"
#include "qfs/walsh.hpp"

namespace qfs::harness {
namespace {

using nlohmann::json;

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.n_values = {4, 6};
    c.trials = 6;
    c.policy = StoppingPolicy::fixed(200);
    c.estimation_examples = 500;
    c.seed = 77;
    return c;
}

TEST(Config, Defaults) {
    const auto c = ExperimentConfig::from_json(json::object());
    EXPECT_EQ(c.n_values, (std::vector<int>{8, 10, 12, 14, 16}));
    EXPECT_EQ(c.trials, 50);
    EXPECT_EQ(c.dnf_terms, 4);
    EXPECT_EQ(c.m_rule.kind, TrainingRule::Kind::sqrt_2n);
    EXPECT_EQ(c.policy.kind, StoppingPolicy::Kind::sequential_gap);
}

TEST(Config, ParsesKeys) {
    const auto c = ExperimentConfig::from_json(json::parse(R"({
        "n_values": [3, 5], "trials": 4, "dnf": {"terms": 2, "width": 2},
        "m_rule": {"fixed": 9}, "policy": {"kind": "fixed_budget", "budget": 33},
        "budget_c": 2.5, "estimation_examples": 100, "exclude_zero": true,
        "seed": 5, "workers": 3, "cap": 20})"));
    EXPECT_EQ(c.n_values, (std::vector<int>{3, 5}));
    EXPECT_EQ(c.dnf_width, 2);
    EXPECT_EQ(c.m_rule.kind, TrainingRule::Kind::fixed);
    EXPECT_EQ(c.m_rule.draws, 9U);
    EXPECT_EQ(c.policy.budget, 33U);
    EXPECT_TRUE(c.exclude_zero);
    EXPECT_EQ(c.workers, 3);
    EXPECT_EQ(c.limits.max_arity, 20);
    EXPECT_EQ(ExperimentConfig::from_json(json::parse(R"({"m_rule": "full_table"})")).m_rule.kind,
              TrainingRule::Kind::full_table);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(ExperimentConfig::from_json(json::parse(R"({"trials": "x"})")), ParseError);
    EXPECT_THROW(ExperimentConfig::from_json(json::parse(R"({"m_rule": "half"})")), ParseError);
    EXPECT_THROW(ExperimentConfig::from_json(json::parse(R"({"preset": "huge"})")), ParseError);
    auto c = small_config();
    c.trials = 0;
    EXPECT_THROW(c.validate(), ParameterError);
    c = small_config();
    c.n_values = {2};
    EXPECT_THROW(c.validate(), ParameterError);
}

TEST(Projection, LargePreset) {
    const auto c = ExperimentConfig::large_n_preset();
    const auto over = over_cap(c);
    ASSERT_EQ(over.size(), 1U);
    const auto& p = over.front();
    EXPECT_EQ(p.n, 30);
    EXPECT_EQ(p.training_examples, 32768U);
    EXPECT_EQ(p.projected_samples, static_cast<std::uint64_t>(std::ceil(c.budget_c * 32768.0)));
    EXPECT_EQ(p.state_bytes, std::uint64_t{8} << 30);
    EXPECT_EQ(p.state_qubits, 30);
    EXPECT_EQ(p.preparation_qubits, 61);
    EXPECT_FALSE(p.within_cap);
    const auto j = to_json(p);
    EXPECT_EQ(j.at("projected_samples"), p.projected_samples);
    EXPECT_THROW(run_experiment(c), ResourceError);
}

TEST(Projection, WithinCap) {
    const auto p = project(10, 8.0, ResourceLimits{26});
    EXPECT_TRUE(p.within_cap);
    EXPECT_EQ(p.projected_samples, 256U);
    EXPECT_EQ(p.state_bytes, 8192U);
}

TEST(Seeds, SplittingRule) {
    EXPECT_EQ(trial_seed(5, 8, 3), derive_seed(5, (std::uint64_t{8} << 32) | 3U));
    std::set<std::uint64_t> seen;
    for (int n = 1; n <= 16; ++n) {
        for (int t = 0; t < 50; ++t) seen.insert(trial_seed(1, n, t));
    }
    EXPECT_EQ(seen.size(), 16U * 50U);
}

TEST(Experiment, RowCount) {
    ExperimentConfig c;
    c.n_values = {8, 10, 12};
    c.trials = 50;
    c.policy = StoppingPolicy::fixed(64);
    c.estimation_examples = 64;
    const auto records = run_experiment(c);
    EXPECT_EQ(records.size(), 150U);
    const auto csv = records_csv(records);
    EXPECT_EQ(line_count(csv), 151U);
    EXPECT_EQ(csv.rfind("schema_version,", 0), 0U);
    EXPECT_EQ(csv.find(",wall_ms"), std::string::npos);
    EXPECT_NE(records_csv(records, true).find(",wall_ms"), std::string::npos);
}

TEST(Experiment, SortedAndWorkerIndependent) {
    auto c = small_config();
    const auto a = run_experiment(c);
    c.workers = 3;
    const auto b = run_experiment(c);
    ASSERT_EQ(a.size(), 12U);
    for (std::size_t i = 1; i < a.size(); ++i) {
        EXPECT_TRUE(std::pair(a[i - 1].n, a[i - 1].trial) < std::pair(a[i].n, a[i].trial));
    }
    EXPECT_EQ(records_csv(a), records_csv(b));
    EXPECT_EQ(summary_json(c, summarize(a)).dump(), summary_json(c, summarize(b)).dump());
}

TEST(Experiment, RecordFieldsAreConsistent) {
    const auto c = small_config();
    for (const auto& r : run_experiment(c)) {
        EXPECT_TRUE(r.error.empty()) << r.error;
        EXPECT_GE(r.agreement, 0.0);
        EXPECT_LE(r.agreement, 1.0);
        EXPECT_EQ(r.samples_used, 200U);
        EXPECT_GE(r.nonzero_count * r.m, std::uint64_t{1} << r.n);
        EXPECT_EQ(r.identified.size(), static_cast<std::size_t>(r.n));
        EXPECT_LE(std::abs(r.identified_coefficient), std::abs(r.true_max_coefficient) + 1e-12);
    }
}

TEST(Experiment, TrialReplaysFromSeed) {
    const auto c = small_config();
    const auto records = run_experiment(c);
    const auto again = run_trial(c, records[7].n, records[7].trial);
    EXPECT_EQ(records_csv({again}), records_csv({records[7]}));
}

TEST(Experiment, FullTableHitsUniqueArgmax) {
    ExperimentConfig c;
    c.n_values = {4, 6, 8};
    c.trials = 20;
    c.m_rule = TrainingRule::full_table();
    c.policy = StoppingPolicy::sequential(0.999, 1ULL << 22);
    c.estimation_examples = 1000;
    c.seed = 3;
    const auto records = run_experiment(c);
    int unique = 0;
    for (const auto& r : records) {
        EXPECT_EQ(r.m, std::size_t{1} << r.n);
        if (!r.unique_argmax) continue;
        ++unique;
        EXPECT_TRUE(r.hit) << "n=" << r.n << " trial=" << r.trial;
        EXPECT_EQ(r.identified, r.true_argmax);
    }
    EXPECT_GT(unique, 0);
    for (const auto& a : summarize(records).per_n) {
        if (a.unique_argmax_trials > 0) EXPECT_EQ(a.unique_argmax_hit_rate, 1.0);
    }
}

TEST(Experiment, AgreementRateMatchesIdentity) {
    Rng rng(4);
    const BipolarFunction f = random_dnf(8, 4, 3, rng);
    const auto s = exact_spectrum(f);
    for (std::uint64_t a : {0ULL, 5ULL, 77ULL, 200ULL}) {
        const WeakHypothesis h{Bitstring(a, 8), s[a] < 0 ? -1 : 1};
        EXPECT_NEAR(agreement_rate(f, h), 0.5 * (1.0 + std::abs(s[a])), 1e-12);
    }
}

TEST(Summary, Fields) {
    const auto c = small_config();
    const auto summary = summarize(run_experiment(c));
    ASSERT_EQ(summary.per_n.size(), 2U);
    ASSERT_TRUE(summary.slope.has_value());
    EXPECT_NEAR(*summary.slope, 0.0, 1e-12);
    EXPECT_EQ(summary.per_n[0].median_samples, 200.0);
    EXPECT_EQ(summary.per_n[1].reference_min_amplitude, 1.0 / 8.0);
    const auto j = summary_json(c, summary);
    EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
    EXPECT_NEAR(j.at("slope_log2_samples_vs_n").get<double>(), 0.0, 1e-12);
    EXPECT_EQ(j.at("per_n").size(), 2U);
}

}  // namespace
}  // namespace qfs::harness
