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

#include "qfs/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include "qfs/boolean_fn.hpp"
#include "qfs/error.hpp"
#include "qfs/qstate.hpp"
#include "qfs/random.hpp"
#include "qfs/stats.hpp"
#include "qfs/walsh.hpp"

namespace qfs::harness {
namespace {

std::string printf_string(const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

BipolarFunction random_table(int n, Rng& rng) {
    std::vector<int> out(dimension(n));
    for (int& y : out) y = coin(rng) ? 1 : -1;
    return TruthTable(n, std::move(out));
}

int random_arity(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

TrainingSet random_training_set(const BipolarFunction& f, Rng& rng) {
    const ExampleOracle oracle(f);
    const auto size = dimension(f.arity());
    return build_training_set(oracle, 1 + uniform_below(rng, size), rng);
}

SuiteResult bridge(Rng& rng) {
    constexpr int kPairs = 60;
    double worst = 0.0;
    for (int i = 0; i < kPairs; ++i) {
        const int n = random_arity(rng, 4, 10);
        const auto f = random_table(n, rng);
        const auto t = random_training_set(f, rng);
        const auto state = apply_walsh(encode_training_set(t));
        const double scale = std::sqrt(static_cast<double>(t.size()) / std::ldexp(1.0, n));
        for (std::uint64_t a = 0; a < dimension(n); ++a) {
            const Bitstring idx(a, n);
            worst = std::max(worst, std::abs(amplitude(state, idx) - scale * approx_coefficient(t, idx)));
        }
    }
    return {"bridge", worst < 1e-10, printf_string("%d pairs, max |c_a - sqrt(m/2^n) f~(a)| = %.3g", kPairs, worst)};
}

SuiteResult memorization(Rng& rng) {
    constexpr int kSets = 30;
    double worst = 0.0;
    for (int i = 0; i < kSets; ++i) {
        const int n = random_arity(rng, 1, 8);
        const auto f = random_table(n, rng);
        const auto t = random_training_set(f, rng);
        const auto spectrum = approx_spectrum(t);
        for (std::uint64_t x = 0; x < dimension(n); ++x) {
            const Bitstring input(x, n);
            worst = std::max(worst, std::abs(evaluate_expansion(spectrum, input) - memorization_value(t, input)));
        }
    }
    return {"memorization", worst < 1e-9, printf_string("%d training sets, max deviation = %.3g", kSets, worst)};
}

SuiteResult orthonormality(Rng&) {
    long long bad = 0;
    for (int n = 1; n <= 8; ++n) {
        const std::uint64_t size = dimension(n);
        for (std::uint64_t a = 0; a < size; ++a) {
            for (std::uint64_t b = 0; b < size; ++b) {
                long long sum = 0;
                for (std::uint64_t x = 0; x < size; ++x) sum += chi_index(a, x) * chi_index(b, x);
                const long long expected = a == b ? static_cast<long long>(size) : 0;
                if (sum != expected) ++bad;
            }
        }
    }
    return {"orthonormality", bad == 0, printf_string("n = 1..8 exhaustive, %lld violations", bad)};
}

SuiteResult parseval(Rng& rng) {
    constexpr int kFunctions = 20;
    double worst = 0.0;
    for (int i = 0; i < kFunctions; ++i) {
        const int n = random_arity(rng, 1, 12);
        const auto spectrum = exact_spectrum(random_table(n, rng));
        double sum = 0.0;
        for (double c : spectrum.coeffs()) sum += c * c;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return {"parseval", worst < 1e-10, printf_string("%d functions, max |sum fhat^2 - 1| = %.3g", kFunctions, worst)};
}

SuiteResult born(Rng& rng) {
    constexpr int kStates = 5;
    constexpr std::uint64_t kSamples = 100000;
    constexpr double kAlpha = 1e-3;
    double min_p = 1.0;
    for (int i = 0; i < kStates; ++i) {
        const int n = random_arity(rng, 1, 6);
        const auto f = random_table(n, rng);
        const auto state = apply_walsh(encode_training_set(random_training_set(f, rng)));
        const BornSampler sampler(state);
        std::vector<std::uint64_t> counts(state.size(), 0);
        for (std::uint64_t k = 0; k < kSamples; ++k) ++counts[sampler.sample_index(rng)];
        std::vector<double> probs;
        for (double c : state.amplitudes()) probs.push_back(c * c);
        min_p = std::min(min_p, stats::chi_square_gof(counts, probs).p_value);
    }
    // Bonferroni over the states keeps the suite's false-failure rate at kAlpha.
    return {"born", min_p > kAlpha / kStates,
            printf_string("%d states x %llu samples, min chi-square p = %.3g", kStates,
                          static_cast<unsigned long long>(kSamples), min_p)};
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
    std::optional<testing::ScopedFwhtSignFault> fault;
    if (options.inject_fwht_sign_fault) fault.emplace();

    using Suite = std::function<SuiteResult(Rng&)>;
    const std::vector<std::pair<const char*, Suite>> suites = {
        {"bridge", bridge}, {"memorization", memorization}, {"orthonormality", orthonormality},
        {"parseval", parseval}, {"born", born},
    };
    std::vector<SuiteResult> out;
    std::uint64_t key = 0;
    for (const auto& [name, suite] : suites) {
        Rng rng(derive_seed(options.seed, key++));
        try {
            out.push_back(suite(rng));
        } catch (const Error& e) {
            out.push_back({name, false, std::string("error: ") + e.what()});
        }
    }
    return out;
}

std::string format_report(const std::vector<SuiteResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += (r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + '\n';
    }
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return !results.empty();
}

}  // namespace qfs::harness
