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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pbench/codebook.hpp"
#include "pbench/common.hpp"
#include "pbench/embedding.hpp"
#include "pbench/rng.hpp"

namespace pbench {

/// Symmetric n x n matrix with entries in {+1,-1} and unit diagonal: the
/// matrix arrangement of a physical readout, m[i][j] = r_{index({i,j})}.
/// Codewords are exactly the rank-one matrices v v^T, characterized by the
/// integer identity m*m == n*m.
class ParityMatrix {
 public:
  explicit ParityMatrix(int n)
      : n_(n), a_(static_cast<std::size_t>(n) * n, Spin{1}) {
    require(n >= 2, "ParityMatrix: need n >= 2");
  }

  static ParityMatrix from_readout(std::span<const Spin> r, const PairCodebook& cb) {
    check_length(r, static_cast<std::size_t>(cb.k()), "ParityMatrix::from_readout");
    check_spin_values(r, "ParityMatrix::from_readout");
    ParityMatrix m(cb.n());
    std::size_t p = 0;
    for (const auto& [i, j] : cb.pairs()) {
      m.set(i, j, r[p]);
      m.set(j, i, r[p]);
      ++p;
    }
    return m;
  }

  SpinConfig to_readout(const PairCodebook& cb) const {
    require(cb.n() == n_, "ParityMatrix::to_readout: codebook order mismatch");
    SpinConfig r(static_cast<std::size_t>(cb.k()));
    std::size_t p = 0;
    for (const auto& [i, j] : cb.pairs()) r[p++] = at(i, j);
    return r;
  }

  int order() const noexcept { return n_; }
  Spin at(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, Spin v) noexcept { a_[static_cast<std::size_t>(i) * n_ + j] = v; }

  /// Integer check of m*m == n*m.
  bool is_codeword() const noexcept {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        int acc = 0;
        for (int t = 0; t < n_; ++t) acc += at(i, t) * at(t, j);
        if (acc != n_ * at(i, j)) return false;
      }
    return true;
  }

  /// One decoding step: componentwise sign of m(m - I). A zero product entry
  /// (possible only for odd n) keeps the current value, so the output is
  /// again symmetric with unit diagonal.
  ParityMatrix bf_step() const {
    ParityMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        int acc = 0;
        for (int t = 0; t < n_; ++t) acc += at(i, t) * at(t, j);
        acc -= at(i, j);
        const Spin v = acc > 0 ? Spin{1} : (acc < 0 ? Spin{-1} : at(i, j));
        out.set(i, j, v);
        out.set(j, i, v);
      }
    return out;
  }

  /// First row, which for a codeword matrix v v^T with the unit diagonal is
  /// the logical state normalized to Z_0 = +1.
  SpinConfig first_row_logical() const {
    return SpinConfig(a_.begin(), a_.begin() + n_);
  }

  bool operator==(const ParityMatrix& other) const = default;

 private:
  int n_;
  std::vector<Spin> a_;
};

struct BfResult {
  SpinConfig code;      ///< readout of the final matrix (a codeword iff converged)
  SpinConfig logical;   ///< first row of the final matrix, Z_0 = +1
  bool converged = false;
  int iterations = 0;
};

/// Iterates bf_step from the matrix arrangement of r until a codeword is
/// reached or max_iter steps were applied. Non-convergence is reported, not
/// thrown. A fixed point that is not a codeword also stops the iteration.
inline BfResult bf_decode(std::span<const Spin> r, const PairCodebook& cb, int max_iter = 6) {
  require(max_iter >= 1, "bf_decode: max_iter must be >= 1");
  ParityMatrix m = ParityMatrix::from_readout(r, cb);
  BfResult result;
  result.converged = m.is_codeword();
  while (!result.converged && result.iterations < max_iter) {
    ParityMatrix next = m.bf_step();
    ++result.iterations;
    const bool stuck = next == m;
    m = std::move(next);
    result.converged = m.is_codeword();
    if (stuck) break;
  }
  result.code = m.to_readout(cb);
  result.logical = m.first_row_logical();
  return result;
}

/// Bit-packed BF decoder for n <= 64: row i of the parity matrix is a word
/// whose bit j is set iff m_ij == -1. Produces outputs identical to
/// bf_decode; used on the hot decoding paths.
class FastBfDecoder {
 public:
  explicit FastBfDecoder(const PairCodebook& cb, int max_iter = 6)
      : n_(cb.n()), max_iter_(max_iter) {
    require(n_ <= 64, "FastBfDecoder: supports n <= 64");
    require(max_iter >= 1, "FastBfDecoder: max_iter must be >= 1");
    mask_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    scratch_.resize(static_cast<std::size_t>(n_) * 2);
  }

  /// Packs a readout into matrix rows (bit j of rows[i] = 1 iff z_ij == -1).
  void pack(std::span<const Spin> r, const PairCodebook& cb, std::uint64_t* rows) const {
    for (int i = 0; i < n_; ++i) rows[i] = 0;
    std::size_t p = 0;
    for (const auto& [i, j] : cb.pairs()) {
      if (r[p++] < 0) {
        rows[i] |= std::uint64_t{1} << j;
        rows[j] |= std::uint64_t{1} << i;
      }
    }
  }

  bool is_codeword(const std::uint64_t* rows) const noexcept {
    if (rows[0] & 1) return false;
    for (int i = 1; i < n_; ++i) {
      const std::uint64_t want = (rows[0] >> i) & 1 ? rows[0] ^ mask_ : rows[0];
      if (rows[i] != want) return false;
    }
    return true;
  }

  struct Status {
    bool converged = false;
    int iterations = 0;
  };

  /// Runs the iteration in place on `rows` (n words).
  Status run(std::uint64_t* rows) {
    Status st;
    st.converged = is_codeword(rows);
    std::uint64_t* next = scratch_.data();
    while (!st.converged && st.iterations < max_iter_) {
      bool changed = false;
      for (int i = 0; i < n_; ++i) next[i] = 0;
      for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) {
          const int pc = std::popcount(rows[i] ^ rows[j]);
          const int bit = static_cast<int>((rows[i] >> j) & 1);
          const int t = n_ - 2 * pc - (1 - 2 * bit);
          const int nb = t > 0 ? 0 : (t < 0 ? 1 : bit);
          if (nb != bit) changed = true;
          if (nb) {
            next[i] |= std::uint64_t{1} << j;
            next[j] |= std::uint64_t{1} << i;
          }
        }
      }
      for (int i = 0; i < n_; ++i) rows[i] = next[i];
      ++st.iterations;
      st.converged = is_codeword(rows);
      if (!changed) break;
    }
    return st;
  }

  /// Logical state from row 0 (Z_0 = +1 by the unit diagonal).
  void logical_from_rows(const std::uint64_t* rows, SpinConfig& out) const {
    out.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j)
      out[static_cast<std::size_t>(j)] = (rows[0] >> j) & 1 ? Spin{-1} : Spin{1};
  }

  int order() const noexcept { return n_; }
  int max_iter() const noexcept { return max_iter_; }

 private:
  int n_;
  int max_iter_;
  std::uint64_t mask_;
  std::vector<std::uint64_t> scratch_;
};

struct NearestCodeword {
  SpinConfig codeword;  ///< lexicographically smallest among ties (-1 < +1)
  int distance = 0;
  int tie_count = 1;    ///< number of codewords at the minimum distance
};

/// Exact nearest-codeword search by enumerating all 2^(n-1) distinct
/// codewords; verification oracle for the BF decoder. Refuses n > 20.
inline NearestCodeword nearest_codeword_oracle(std::span<const Spin> r, const PairCodebook& cb) {
  const int n = cb.n();
  if (n > 20)
    throw resource_error("nearest_codeword_oracle: n = " + std::to_string(n) + " exceeds 20");
  check_length(r, static_cast<std::size_t>(cb.k()), "nearest_codeword_oracle");

  NearestCodeword best;
  best.distance = cb.k() + 1;
  best.tie_count = 0;
  SpinConfig logical(static_cast<std::size_t>(n), Spin{1});
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << (n - 1)); ++c) {
    for (int t = 1; t < n; ++t)
      logical[static_cast<std::size_t>(t)] = (c >> (t - 1)) & 1 ? Spin{-1} : Spin{1};
    SpinConfig cw = encode(cb, logical);
    int dist = 0;
    for (std::size_t p = 0; p < cw.size(); ++p) dist += cw[p] != r[p];
    if (dist < best.distance) {
      best.distance = dist;
      best.codeword = std::move(cw);
      best.tie_count = 1;
    } else if (dist == best.distance) {
      ++best.tie_count;
      if (std::lexicographical_compare(cw.begin(), cw.end(), best.codeword.begin(),
                                       best.codeword.end()))
        best.codeword = std::move(cw);
    }
  }
  return best;
}

/// Majority-vote decoding of a minor-embedded readout: each logical spin is
/// the majority sign over its chain; exact ties are resolved by fair coin
/// tosses drawn from `seed`, consumed in chain order.
inline SpinConfig mv_decode(std::span<const Spin> z, const MinorEmbedding& e, std::uint64_t seed) {
  check_length(z, static_cast<std::size_t>(e.k()), "mv_decode");
  SplitMix64 rng(seed);
  SpinConfig logical(static_cast<std::size_t>(e.n()));
  for (int x = 0; x < e.n(); ++x) {
    int sum = 0;
    for (int q : e.chains()[static_cast<std::size_t>(x)]) sum += z[static_cast<std::size_t>(q)];
    logical[static_cast<std::size_t>(x)] =
        sum > 0 ? Spin{1} : (sum < 0 ? Spin{-1} : rng.next_spin());
  }
  return logical;
}

}  // namespace pbench
