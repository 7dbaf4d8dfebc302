// Copyright 2026 The parity-bench authors
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

#include "pbench/common.hpp"

namespace pbench {

/// The 64-bit finalizer of splitmix64 (Steele, Lea, Flood; constants from
/// Vigna's reference implementation).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// splitmix64, the repo-wide pseudorandom generator: 64-bit seed, 64-bit
/// outputs, period 2^64. Every stochastic routine takes an explicit seed and
/// owns its generator instance, so results never depend on global state or
/// on how work is scheduled across threads. Output tables record the
/// generator name.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform spin from the top output bit.
  Spin next_spin() noexcept { return (next() >> 63) ? Spin{-1} : Spin{1}; }

 private:
  std::uint64_t state_;
};

/// Seed of sub-stream `index` under `master`: equal to the (index+1)-th output
/// of splitmix64 seeded with `master`. Used to derive per-repetition and
/// per-purpose child seeds so aggregates are independent of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Uniform configuration of `size` spins, consuming ceil(size/64) generator
/// words (one bit per spin).
inline SpinConfig random_config(int size, SplitMix64& rng) {
  SpinConfig z(static_cast<std::size_t>(size));
  std::uint64_t word = 0;
  for (int i = 0; i < size; ++i) {
    if ((i & 63) == 0) word = rng.next();
    z[static_cast<std::size_t>(i)] = (word >> (i & 63)) & 1 ? Spin{-1} : Spin{1};
  }
  return z;
}

/// Overwrites `z` with a uniform configuration; same stream layout as
/// random_config.
inline void random_config_into(SpinConfig& z, SplitMix64& rng) {
  std::uint64_t word = 0;
  const int size = static_cast<int>(z.size());
  for (int i = 0; i < size; ++i) {
    if ((i & 63) == 0) word = rng.next();
    z[static_cast<std::size_t>(i)] = (word >> (i & 63)) & 1 ? Spin{-1} : Spin{1};
  }
}

}  // namespace pbench
