// Copyright (c) 2026 The semikern Authors. All Rights Reserved.
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

#include <cstdint>

namespace semikern {

/// SplitMix64 (Steele/Lea/Flood), the build-wide PRNG. It is fixed here so
/// that every seeded artifact reproduces bit-for-bit on any platform; the
/// standard library distributions are deliberately avoided because their
/// output is implementation-defined.
///
/// Besides the usual sequential form, `at(seed, index)` evaluates the
/// stream at an arbitrary counter, which lets generators address matrix
/// entries directly without drawing everything before them.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() noexcept { return to_unit(next()); }

  /// Output of the (index+1)-th call to next() on a generator seeded with
  /// `seed`. Pure function of its arguments.
  static constexpr std::uint64_t at(std::uint64_t seed,
                                    std::uint64_t index) noexcept {
    return mix(seed + (index + 1) * kGamma);
  }

  static constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace semikern
