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
#include <vector>

#include "qfs/bits.hpp"
#include "qfs/boolean_fn.hpp"
#include "qfs/random.hpp"

namespace qfs {

/// Norm tolerance for states produced by the encoders and transforms.
inline constexpr double kNormTolerance = 1e-10;
/// Looser tolerance below which a state is considered corrupt for sampling.
inline constexpr double kMeasureNormTolerance = 1e-6;

/// Real amplitude vector c_x over the 2^n computational basis states.
class StateVector {
  public:
    /// Throws InputShapeError for non-power-of-two lengths and
    /// CorruptStateError when |sum c^2 - 1| exceeds kNormTolerance.
    static StateVector from_amplitudes(std::vector<double> amps);

    /// Only the length is validated. For debugging and fault tests.
    static StateVector from_raw(std::vector<double> amps);

    /// |x>.
    static StateVector basis(const Bitstring& x, const ResourceLimits& limits = {});

    [[nodiscard]] int arity() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const double> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] double norm_squared() const noexcept;

  private:
    explicit StateVector(std::vector<double> amps);

    friend StateVector apply_walsh(StateVector s);

    int n_;
    std::vector<double> amps_;
};

/// c_x = f(x) / sqrt(2^n). Subject to the memory cap.
StateVector encode_function(const BipolarFunction& f, const ResourceLimits& limits = {});

/// c_x = label(x) / sqrt(m) on the training inputs, 0 elsewhere. Amplitudes
/// are assigned directly. Throws PreconditionError on an empty set.
StateVector encode_training_set(const TrainingSet& t, const ResourceLimits& limits = {});

/// H (x) ... (x) H applied to every qubit; reuses the buffer of `s`.
StateVector apply_walsh(StateVector s);

/// Born-rule measurement in the computational basis. The state is not
/// collapsed: repeated calls model fresh preparations. Throws
/// CorruptStateError when the norm is off by more than kMeasureNormTolerance.
Bitstring measure(const StateVector& s, Rng& rng);

/// c_a, exactly as stored.
double amplitude(const StateVector& s, const Bitstring& a);

/// <u|v> for real states of equal arity.
double inner_product(const StateVector& u, const StateVector& v);

/// Repeated measurement of one state via its cumulative distribution:
/// O(2^n) setup, O(n) per sample. Same distribution as measure().
class BornSampler {
  public:
    explicit BornSampler(const StateVector& s);

    [[nodiscard]] int arity() const noexcept { return n_; }
    std::uint64_t sample_index(Rng& rng) const;
    Bitstring sample(Rng& rng) const { return Bitstring(sample_index(rng), n_); }

  private:
    int n_;
    std::vector<double> cdf_;
    std::uint64_t last_nonzero_ = 0;
};

/// Shape of the support of a state, with amplitudes below `zero_tolerance`
/// in magnitude treated as zero.
struct StateStats {
    std::uint64_t nonzero = 0;
    double max_probability = 0.0;
    double min_nonzero_probability = 0.0;
    double min_nonzero_amplitude = 0.0;
};

StateStats summarize(const StateVector& s, double zero_tolerance);

/// Post-Walsh amplitudes of a training-set state are integer multiples of
/// 1/sqrt(m 2^n); half that spacing separates zero from nonzero.
[[nodiscard]] double training_state_zero_tolerance(int n, std::size_t m);

}  // namespace qfs
