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
#include <random>

namespace qfs {

/// Random stream used throughout. The engine's output sequence is fixed by
/// the C++ standard; the helpers below avoid std::*_distribution (whose
/// algorithms are implementation-defined) so seeded runs are reproducible
/// across standard libraries.
using Rng = std::mt19937_64;

/// One step of SplitMix64.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed splitting rule for independent streams: child k of `base` is
/// splitmix64(splitmix64(base) ^ k). Harness trials use k = (n << 32) | trial.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key) noexcept {
    return splitmix64(splitmix64(base) ^ key);
}

/// Uniform integer in [0, bound) by rejection; bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

/// Fair coin.
inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace qfs
