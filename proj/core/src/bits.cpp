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

#include "qfs/bits.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "qfs/error.hpp"
#include "qfs/random.hpp"

namespace qfs {

Bitstring::Bitstring(std::uint64_t value, int width) : value_(value), width_(width) {
    if (width < 0 || width > kMaxBitstringWidth) {
        throw InputShapeError("bitstring width " + std::to_string(width) + " out of range");
    }
    if (width < 64 && (value >> width) != 0) {
        throw InputShapeError("bitstring value does not fit in " + std::to_string(width) + " bits");
    }
}

Bitstring Bitstring::parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(kMaxBitstringWidth)) {
        throw InputShapeError("bitstring too long: " + std::string(text));
    }
    std::uint64_t value = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParseError("not a bitstring: '" + std::string(text) + "'");
        }
        value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Bitstring(value, static_cast<int>(text.size()));
}

std::string Bitstring::to_string() const { return format_bits(value_, width_); }

std::string format_bits(std::uint64_t value, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

void require_width(const Bitstring& x, int n, std::string_view what) {
    if (x.width() != n) {
        throw InputShapeError(std::string(what) + ": expected " + std::to_string(n) +
                              " bits, got " + std::to_string(x.width()));
    }
}

int arity_of_length(std::size_t len) {
    if (!is_power_of_two(len)) {
        throw InputShapeError("length " + std::to_string(len) + " is not a power of two");
    }
    return std::countr_zero(len);
}

ResourceLimits ResourceLimits::from_environment() {
    ResourceLimits limits;
    if (const char* env = std::getenv(kMaxArityEnv)) {
        std::string_view text(env);
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value >= 0 &&
            value <= kMaxBitstringWidth) {
            limits.max_arity = value;
        }
    }
    return limits;
}

void ResourceLimits::check(int n, std::string_view what) const {
    if (n > max_arity) {
        throw ResourceError(std::string(what) + ": n = " + std::to_string(n) +
                            " exceeds the memory cap n <= " + std::to_string(max_arity) + " (" +
                            std::to_string(dense_bytes(n) >> 20) + " MiB per dense vector)");
    }
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    // Reject the tail of the 64-bit range so every residue is equally likely.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r = 0;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace qfs
