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

#include "qfs/stats.hpp"

#include <algorithm>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "qfs/error.hpp"

namespace qfs::stats {
namespace {

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level must lie in (0, 1)");
}

}  // namespace

double binomial_lower_bound(std::uint64_t successes, std::uint64_t trials, double level) {
    check_level(level);
    if (trials == 0 || successes == 0) return 0.0;
    if (successes > trials) throw ParameterError("more successes than trials");
    const auto k = static_cast<double>(successes);
    const auto n = static_cast<double>(trials);
    return boost::math::ibeta_inv(k, n - k + 1.0, 1.0 - level);
}

double binomial_upper_bound(std::uint64_t successes, std::uint64_t trials, double level) {
    check_level(level);
    if (trials == 0 || successes >= trials) return 1.0;
    const auto k = static_cast<double>(successes);
    const auto n = static_cast<double>(trials);
    return boost::math::ibeta_inv(k + 1.0, n - k, level);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities, double min_expected) {
    if (observed.size() != probabilities.size()) throw InputShapeError("chi-square: size mismatch");
    std::uint64_t total = 0;
    for (auto c : observed) total += c;
    ChiSquareResult r;
    if (total == 0) return r;

    const auto n = static_cast<double>(total);
    double pooled_expected = 0.0;
    double pooled_observed = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * n;
        const auto obs = static_cast<double>(observed[i]);
        if (probabilities[i] <= 0.0) {
            if (observed[i] > 0) r.impossible_outcome = true;
            continue;
        }
        if (expected < min_expected) {
            pooled_expected += expected;
            pooled_observed += obs;
            continue;
        }
        r.statistic += (obs - expected) * (obs - expected) / expected;
        ++cells;
    }
    if (pooled_expected > 0.0) {
        r.statistic += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                       pooled_expected;
        ++cells;
    }
    r.degrees_of_freedom = cells - 1;
    if (r.impossible_outcome) {
        r.p_value = 0.0;
    } else if (r.degrees_of_freedom >= 1) {
        boost::math::chi_squared dist(r.degrees_of_freedom);
        r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    }
    return r;
}

double median(std::span<const double> values) {
    if (values.empty()) throw PreconditionError("median of an empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw PreconditionError("slope fit needs >= 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw PreconditionError("slope fit needs distinct x values");
    return sxy / sxx;
}

}  // namespace qfs::stats
