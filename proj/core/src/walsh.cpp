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

#include "qfs/walsh.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "qfs/error.hpp"

namespace qfs {
namespace {

std::atomic<int> g_sign_fault{0};

}  // namespace

int chi(const Bitstring& a, const Bitstring& x) {
    if (a.width() != x.width()) {
        throw InputShapeError("chi: index and input widths differ (" + std::to_string(a.width()) +
                              " vs " + std::to_string(x.width()) + ")");
    }
    return chi_index(a.value(), x.value());
}

void fwht_inplace(std::span<double> v, Scaling scaling) {
    const int n = arity_of_length(v.size());
    const std::size_t len = v.size();
    const bool fault = g_sign_fault.load(std::memory_order_relaxed) != 0;

    for (std::size_t h = 1; h < len; h <<= 1) {
        const bool flip = fault && (h << 1) == len;
        for (std::size_t i = 0; i < len; i += h << 1) {
            double* lo = v.data() + i;
            double* hi = lo + h;
            for (std::size_t j = 0; j < h; ++j) {
                const double x = lo[j];
                const double y = hi[j];
                lo[j] = x + y;
                hi[j] = flip ? y - x : x - y;
            }
        }
    }

    double factor = 1.0;
    switch (scaling) {
        case Scaling::none:
            return;
        case Scaling::inverse_size:
            factor = std::ldexp(1.0, -n);
            break;
        case Scaling::unitary:
            // 2^(-n/2), exact for even n.
            factor = (n % 2 == 0) ? std::ldexp(1.0, -n / 2) : std::ldexp(1.0, -(n + 1) / 2) * std::sqrt(2.0);
            break;
    }
    for (double& x : v) x *= factor;
}

std::vector<double> fwht(std::span<const double> v, Scaling scaling) {
    std::vector<double> out(v.begin(), v.end());
    fwht_inplace(out, scaling);
    return out;
}

FourierSpectrum::FourierSpectrum(std::vector<double> coeffs)
    : n_(arity_of_length(coeffs.size())), coeffs_(std::move(coeffs)) {}

double FourierSpectrum::at(const CoefficientIndex& a) const {
    require_width(a, n_, "spectrum index");
    return coeffs_[a.value()];
}

FourierSpectrum exact_spectrum(const BipolarFunction& f, const ResourceLimits& limits) {
    const int n = f.arity();
    limits.check(n, "exact spectrum");
    std::vector<double> v(dimension(n));
    for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = f.eval_index(x);
    fwht_inplace(v, Scaling::inverse_size);
    return FourierSpectrum(std::move(v));
}

double approx_coefficient(const TrainingSet& t, const CoefficientIndex& a) {
    require_width(a, t.arity(), "approx_coefficient");
    if (t.empty()) throw PreconditionError("approx_coefficient: empty training set");
    long long sum = 0;
    for (const auto& [x, y] : t.entries()) sum += y * chi_index(x, a.value());
    return static_cast<double>(sum) / static_cast<double>(t.size());
}

FourierSpectrum approx_spectrum(const TrainingSet& t, const ResourceLimits& limits) {
    const int n = t.arity();
    limits.check(n, "approx spectrum");
    if (t.empty()) throw PreconditionError("approx_spectrum: empty training set");
    std::vector<double> out(dimension(n));
    const double m = static_cast<double>(t.size());
    for (std::uint64_t a = 0; a < out.size(); ++a) {
        long long sum = 0;
        for (const auto& [x, y] : t.entries()) sum += y * chi_index(x, a);
        out[a] = static_cast<double>(sum) / m;
    }
    return FourierSpectrum(std::move(out));
}

double evaluate_expansion(const FourierSpectrum& spectrum, std::span<const CoefficientIndex> support,
                          const Bitstring& x) {
    require_width(x, spectrum.arity(), "evaluate_expansion");
    double sum = 0.0;
    for (const auto& a : support) sum += spectrum.at(a) * chi_index(a.value(), x.value());
    return sum;
}

double evaluate_expansion(const FourierSpectrum& spectrum, const Bitstring& x) {
    require_width(x, spectrum.arity(), "evaluate_expansion");
    double sum = 0.0;
    for (std::uint64_t a = 0; a < spectrum.size(); ++a) sum += spectrum[a] * chi_index(a, x.value());
    return sum;
}

double memorization_value(const TrainingSet& t, const Bitstring& x) {
    if (t.empty()) throw PreconditionError("memorization_value: empty training set");
    const auto y = t.label(x);
    if (!y) return 0.0;
    return std::ldexp(1.0, t.arity()) / static_cast<double>(t.size()) * *y;
}

namespace testing {

ScopedFwhtSignFault::ScopedFwhtSignFault() { g_sign_fault.fetch_add(1); }
ScopedFwhtSignFault::~ScopedFwhtSignFault() { g_sign_fault.fetch_sub(1); }

}  // namespace testing
}  // namespace qfs
