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

#include <utility>
#include <vector>

#include "pbench/common.hpp"

namespace pbench {

/// Bijection between unordered logical pairs {i, j}, 0 <= i < j < n, and
/// linear physical indices 0..k-1, k = n(n-1)/2, in lexicographic order:
/// {0,1} -> 0, {0,2} -> 1, ..., {n-2,n-1} -> k-1.
///
/// Logical and physical indices are 0-based everywhere in the library; file
/// formats label pairs 1-based.
class PairCodebook {
 public:
  explicit PairCodebook(int n) : n_(n) {
    require(n >= 2, "PairCodebook: need n >= 2, got " + std::to_string(n));
    k_ = n * (n - 1) / 2;
    pairs_.reserve(static_cast<std::size_t>(k_));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

  /// Linear index of pair {i, j}; requires 0 <= i < j < n.
  int index(int i, int j) const noexcept {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::pair<int, int> pair(int idx) const noexcept {
    return pairs_[static_cast<std::size_t>(idx)];
  }

  const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }

 private:
  int n_;
  int k_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Parity encoding of a logical configuration: z_ij = Z_i * Z_j in codebook
/// order. encode(Z) == encode(-Z), so the map is exactly two-to-one.
inline SpinConfig encode(const PairCodebook& cb, std::span<const Spin> logical) {
  check_length(logical, static_cast<std::size_t>(cb.n()), "encode");
  check_spin_values(logical, "encode");
  SpinConfig z(static_cast<std::size_t>(cb.k()));
  std::size_t p = 0;
  for (const auto& [i, j] : cb.pairs())
    z[p++] = static_cast<Spin>(logical[static_cast<std::size_t>(i)] *
                               logical[static_cast<std::size_t>(j)]);
  return z;
}

}  // namespace pbench
