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
#include <span>

namespace qfs::stats {

/// One-sided Clopper-Pearson lower bound on a binomial proportion: with
/// probability at least `level` the true proportion is >= the bound.
double binomial_lower_bound(std::uint64_t successes, std::uint64_t trials, double level);

/// One-sided Clopper-Pearson upper bound at confidence `level`.
double binomial_upper_bound(std::uint64_t successes, std::uint64_t trials, double level);

struct ChiSquareResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    /// Observed counts in a zero-probability cell make the fit fail outright.
    bool impossible_outcome = false;
};

/// Pearson goodness of fit of `observed` counts against `probabilities`.
/// Cells with expected count below `min_expected` are pooled into one bin.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities, double min_expected = 5.0);

/// Median of a copy of `values`; mean of the middle pair for even sizes.
double median(std::span<const double> values);

/// Least-squares slope of y on x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace qfs::stats
