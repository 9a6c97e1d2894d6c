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

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "qfs/bits.hpp"
#include "qfs/boolean_fn.hpp"

namespace qfs {

/// chi_a(x) = (-1)^(a.x): +1 when popcount(a AND x) is even, -1 when odd.
[[nodiscard]] inline int chi_index(std::uint64_t a, std::uint64_t x) noexcept {
    return (std::popcount(a & x) & 1) ? -1 : 1;
}

/// Throws InputShapeError on width mismatch.
int chi(const Bitstring& a, const Bitstring& x);

/// Post-multiplier applied after the +-1 Walsh matrix.
enum class Scaling {
    none,          ///< B v
    inverse_size,  ///< B v / 2^n, the classical coefficient normalisation
    unitary,       ///< B v / sqrt(2^n), i.e. H (x) ... (x) H
};

/// In-place radix-2 butterfly computing out[a] = sum_x chi_a(x) v[x] in
/// O(n 2^n). Throws InputShapeError if the length is not a power of two.
void fwht_inplace(std::span<double> v, Scaling scaling);

[[nodiscard]] std::vector<double> fwht(std::span<const double> v, Scaling scaling);

/// Walsh coefficients of a function over {0,1}^n, indexed by a.
class FourierSpectrum {
  public:
    /// Throws InputShapeError unless coeffs has a power-of-two length.
    explicit FourierSpectrum(std::vector<double> coeffs);

    [[nodiscard]] int arity() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] double operator[](std::uint64_t a) const noexcept { return coeffs_[a]; }
    [[nodiscard]] double at(const CoefficientIndex& a) const;
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }

  private:
    int n_;
    std::vector<double> coeffs_;
};

/// Exact coefficients fhat(a) = 2^-n sum_b f(b) chi_b(a). Subject to the cap.
FourierSpectrum exact_spectrum(const BipolarFunction& f, const ResourceLimits& limits = {});

/// ftilde(a) = (1/m) sum_{x in T} f(x) chi_x(a), summed directly over the
/// training entries (no transform involved).
double approx_coefficient(const TrainingSet& t, const CoefficientIndex& a);

/// approx_coefficient for every a, by direct O(m 2^n) summation.
FourierSpectrum approx_spectrum(const TrainingSet& t, const ResourceLimits& limits = {});

/// sum_{a in support} spectrum[a] chi_a(x).
double evaluate_expansion(const FourierSpectrum& spectrum, std::span<const CoefficientIndex> support,
                          const Bitstring& x);

/// Same, with every index 0..2^n-1 in the support.
double evaluate_expansion(const FourierSpectrum& spectrum, const Bitstring& x);

/// Closed form of the full-support reconstruction from a training set:
/// (2^n/m) * label(x) when x is in T, 0 otherwise.
double memorization_value(const TrainingSet& t, const Bitstring& x);

namespace testing {

/// While alive, fwht_inplace flips the sign of its last butterfly stage's
/// difference branch. Used only to check that verification suites notice a
/// broken transform.
class ScopedFwhtSignFault {
  public:
    ScopedFwhtSignFault();
    ~ScopedFwhtSignFault();
    ScopedFwhtSignFault(const ScopedFwhtSignFault&) = delete;
    ScopedFwhtSignFault& operator=(const ScopedFwhtSignFault&) = delete;
};

}  // namespace testing
}  // namespace qfs
