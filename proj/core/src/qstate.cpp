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

#include "qfs/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfs/error.hpp"
#include "qfs/walsh.hpp"

namespace qfs {

StateVector::StateVector(std::vector<double> amps)
    : n_(arity_of_length(amps.size())), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<double> amps) {
    StateVector s(std::move(amps));
    if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
        throw CorruptStateError("amplitudes are not normalised: sum c^2 = " +
                                std::to_string(s.norm_squared()));
    }
    return s;
}

StateVector StateVector::from_raw(std::vector<double> amps) { return StateVector(std::move(amps)); }

StateVector StateVector::basis(const Bitstring& x, const ResourceLimits& limits) {
    limits.check(x.width(), "basis state");
    std::vector<double> amps(dimension(x.width()), 0.0);
    amps[x.value()] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (double c : amps_) sum += c * c;
    return sum;
}

StateVector encode_function(const BipolarFunction& f, const ResourceLimits& limits) {
    const int n = f.arity();
    limits.check(n, "encode_function");
    const double scale = 1.0 / std::sqrt(static_cast<double>(dimension(n)));
    std::vector<double> amps(dimension(n));
    for (std::uint64_t x = 0; x < amps.size(); ++x) amps[x] = f.eval_index(x) * scale;
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector encode_training_set(const TrainingSet& t, const ResourceLimits& limits) {
    if (t.empty()) throw PreconditionError("encode_training_set: empty training set");
    const int n = t.arity();
    limits.check(n, "encode_training_set");
    const double scale = 1.0 / std::sqrt(static_cast<double>(t.size()));
    std::vector<double> amps(dimension(n), 0.0);
    for (const auto& [x, y] : t.entries()) amps[x] = y * scale;
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_walsh(StateVector s) {
    fwht_inplace(s.amps_, Scaling::unitary);
    return s;
}

Bitstring measure(const StateVector& s, Rng& rng) {
    const double norm = s.norm_squared();
    if (std::abs(norm - 1.0) > kMeasureNormTolerance) {
        throw CorruptStateError("cannot measure a state with sum c^2 = " + std::to_string(norm));
    }
    const auto amps = s.amplitudes();
    const double u = uniform_unit(rng) * norm;
    double acc = 0.0;
    std::uint64_t last = 0;
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        const double p = amps[x] * amps[x];
        if (p == 0.0) continue;
        acc += p;
        last = x;
        if (u < acc) return Bitstring(x, s.arity());
    }
    return Bitstring(last, s.arity());
}

double amplitude(const StateVector& s, const Bitstring& a) {
    require_width(a, s.arity(), "amplitude");
    return s.amplitudes()[a.value()];
}

double inner_product(const StateVector& u, const StateVector& v) {
    if (u.arity() != v.arity()) throw InputShapeError("inner_product: arity mismatch");
    double sum = 0.0;
    const auto a = u.amplitudes();
    const auto b = v.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

BornSampler::BornSampler(const StateVector& s) : n_(s.arity()), cdf_(s.size()) {
    const double norm = s.norm_squared();
    if (std::abs(norm - 1.0) > kMeasureNormTolerance) {
        throw CorruptStateError("cannot sample a state with sum c^2 = " + std::to_string(norm));
    }
    double acc = 0.0;
    const auto amps = s.amplitudes();
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const double p = amps[x] * amps[x];
        acc += p;
        cdf_[x] = acc;
        if (p > 0.0) last_nonzero_ = x;
    }
}

std::uint64_t BornSampler::sample_index(Rng& rng) const {
    const double u = uniform_unit(rng) * cdf_.back();
    // First cell whose cumulative mass exceeds u; zero-width cells are skipped.
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<std::uint64_t>(it - cdf_.begin());
    return std::min(idx, last_nonzero_);
}

StateStats summarize(const StateVector& s, double zero_tolerance) {
    StateStats st;
    double min_amp = 0.0;
    for (double c : s.amplitudes()) {
        const double mag = std::abs(c);
        if (mag <= zero_tolerance) continue;
        ++st.nonzero;
        st.max_probability = std::max(st.max_probability, c * c);
        if (min_amp == 0.0 || mag < min_amp) min_amp = mag;
    }
    st.min_nonzero_amplitude = min_amp;
    st.min_nonzero_probability = min_amp * min_amp;
    return st;
}

double training_state_zero_tolerance(int n, std::size_t m) {
    return 0.5 / std::sqrt(static_cast<double>(m) * static_cast<double>(dimension(n)));
}

}  // namespace qfs
