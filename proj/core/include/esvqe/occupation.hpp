// Copyright 2026 The esvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <initializer_list>
#include <span>
#include <vector>

#include "esvqe/error.hpp"

namespace esvqe {

/// Occupied spin orbitals of a computational-basis state, bit k = orbital k.
class Occupation {
  public:
    constexpr Occupation() = default;
    constexpr explicit Occupation(std::uint64_t bits) : bits_(bits) {}

    static Occupation from_indices(std::span<const std::size_t> indices) {
        std::uint64_t bits = 0;
        for (std::size_t k : indices) {
            if (k >= 64) {
                throw IndexError("occupation index out of range");
            }
            bits |= 1ULL << k;
        }
        return Occupation(bits);
    }
    static Occupation from_indices(std::initializer_list<std::size_t> indices) {
        return from_indices(std::span<const std::size_t>(indices.begin(), indices.size()));
    }

    [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
    [[nodiscard]] constexpr int count() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool test(std::size_t k) const { return (bits_ >> k) & 1ULL; }
    [[nodiscard]] constexpr Occupation with(std::size_t k) const {
        return Occupation(bits_ | (1ULL << k));
    }
    [[nodiscard]] constexpr Occupation without(std::size_t k) const {
        return Occupation(bits_ & ~(1ULL << k));
    }
    [[nodiscard]] std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        }
        return out;
    }

    friend constexpr bool operator==(Occupation, Occupation) = default;

  private:
    std::uint64_t bits_ = 0;
};

} // namespace esvqe
