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
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace qfs {

/// Largest arity a Bitstring can carry. Dense 2^n buffers are further limited
/// by ResourceLimits.
inline constexpr int kMaxBitstringWidth = 62;

/// Fixed-width binary string over {0,1}^n.
///
/// Index convention (shared by every module): the string is read as a
/// big-endian integer, so character 0 is the most significant bit and the
/// basis ordering for n = 2 is 00, 01, 10, 11. Variable i of a formula is
/// character i of the string, i.e. bit (n - 1 - i) of value().
class Bitstring {
  public:
    Bitstring() = default;
    Bitstring(std::uint64_t value, int width);

    static Bitstring parse(std::string_view text);

    [[nodiscard]] std::uint64_t value() const noexcept { return value_; }
    [[nodiscard]] int width() const noexcept { return width_; }

    /// Bit of variable `var` (0 = leftmost character).
    [[nodiscard]] bool var(int var) const noexcept {
        return ((value_ >> (width_ - 1 - var)) & 1U) != 0;
    }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;
    friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

  private:
    std::uint64_t value_ = 0;
    int width_ = 0;
};

/// Indices into the 2^n coefficient / amplitude space are plain Bitstrings.
using CoefficientIndex = Bitstring;

std::string format_bits(std::uint64_t value, int width);

/// Throws InputShapeError unless `x.width() == n`.
void require_width(const Bitstring& x, int n, std::string_view what);

[[nodiscard]] constexpr std::size_t dimension(int n) noexcept {
    return std::size_t{1} << n;
}

[[nodiscard]] constexpr bool is_power_of_two(std::size_t len) noexcept {
    return std::has_single_bit(len);
}

/// log2 of a power-of-two length. Throws InputShapeError otherwise.
int arity_of_length(std::size_t len);

/// Default arity cap for dense 2^n buffers: 2^26 doubles is 512 MiB.
inline constexpr int kDefaultMaxArity = 26;

/// Name of the environment variable that overrides the default cap.
inline constexpr const char* kMaxArityEnv = "QFS_MAX_N";

struct ResourceLimits {
    int max_arity = kDefaultMaxArity;

    /// Default limits, honouring QFS_MAX_N when it holds a valid integer.
    static ResourceLimits from_environment();

    /// Throws ResourceError when n is above the cap.
    void check(int n, std::string_view what) const;
};

/// Bytes needed for one dense vector of 2^n doubles.
[[nodiscard]] constexpr std::uint64_t dense_bytes(int n) noexcept {
    return (std::uint64_t{1} << n) * sizeof(double);
}

}  // namespace qfs
