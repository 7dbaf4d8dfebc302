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
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "pbench/codebook.hpp"
#include "pbench/common.hpp"
#include "pbench/instance.hpp"

namespace pbench {

/// Which bipartite half of a K4,4 cell a qubit sits on. Horizontal-side
/// qubits couple to the same position in the cells left and right; vertical-
/// side qubits to the cells above and below. Within a cell, every
/// horizontal-vertical pair is coupled.
enum class CellSide : std::uint8_t { horizontal, vertical };

struct QubitLocation {
  int row = 0;   ///< cell row in the L x L grid
  int col = 0;   ///< cell column
  CellSide side = CellSide::horizontal;
  int pos = 0;   ///< position 0..3 within the cell side
};

/// Triangular minor embedding of an all-to-all problem on an L x L grid of
/// K4,4 cells, L = ceil(n/4). Logical spin x (block b = x/4, position
/// q = x%4) becomes a chain of L+1 physical spins: the horizontal qubit q of
/// cells (b, 0..b), turning in the diagonal cell (b, b) onto the vertical
/// qubit q of cells (b..L-1, b). Chains of blocks b and b' > b meet exactly
/// once, in cell (b', b); same-block chains meet in their diagonal cell.
///
/// Physical indices are assigned chain by chain in path order, so chain i is
/// the interval [i*(L+1), (i+1)*(L+1)). Qubits of partially filled blocks
/// that no chain uses are absent from the index space.
class MinorEmbedding {
 public:
  explicit MinorEmbedding(int n) : codebook_(n), grid_((n + 3) / 4), chain_len_(grid_ + 1) {
    const int cl = chain_len_;
    k_ = n * cl;
    chains_.resize(static_cast<std::size_t>(n));
    locations_.resize(static_cast<std::size_t>(k_));
    chain_edges_.reserve(static_cast<std::size_t>(n) * grid_);
    for (int x = 0; x < n; ++x) {
      const int b = x / 4;
      const int q = x % 4;
      auto& chain = chains_[static_cast<std::size_t>(x)];
      chain.resize(static_cast<std::size_t>(cl));
      for (int t = 0; t < cl; ++t) {
        const int idx = x * cl + t;
        chain[static_cast<std::size_t>(t)] = idx;
        if (t <= b)
          locations_[static_cast<std::size_t>(idx)] = {b, t, CellSide::horizontal, q};
        else
          locations_[static_cast<std::size_t>(idx)] = {b + (t - b - 1), b, CellSide::vertical, q};
        if (t > 0) chain_edges_.emplace_back(idx - 1, idx);
      }
    }
    // One problem coupler per logical pair. Cross-block chains share exactly
    // one cell, giving a unique horizontal-vertical coupler; same-block
    // chains offer two couplers in their diagonal cell and the
    // lexicographically first is taken.
    crossings_.resize(static_cast<std::size_t>(codebook_.k()));
    std::size_t p = 0;
    for (const auto& [x, y] : codebook_.pairs()) {
      const int bx = x / 4;
      const int by = y / 4;
      if (bx == by) {
        crossings_[p++] = {x * cl + bx, y * cl + bx + 1};
      } else {
        crossings_[p++] = {x * cl + by + 1, y * cl + bx};
      }
    }
  }

  int n() const noexcept { return codebook_.n(); }
  int grid() const noexcept { return grid_; }
  int chain_length() const noexcept { return chain_len_; }
  int k() const noexcept { return k_; }
  const PairCodebook& codebook() const noexcept { return codebook_; }

  const std::vector<std::vector<int>>& chains() const noexcept { return chains_; }
  const std::vector<std::pair<int, int>>& chain_edges() const noexcept { return chain_edges_; }
  /// Problem coupler for codebook pair index p, as (qubit in chain i, qubit
  /// in chain j) for the pair {i, j}.
  const std::vector<std::pair<int, int>>& crossings() const noexcept { return crossings_; }
  const std::vector<QubitLocation>& locations() const noexcept { return locations_; }

  int chain_of(int qubit) const noexcept { return qubit / chain_len_; }

 private:
  PairCodebook codebook_;
  int grid_;
  int chain_len_;
  int k_;
  std::vector<std::vector<int>> chains_;
  std::vector<std::pair<int, int>> chain_edges_;
  std::vector<std::pair<int, int>> crossings_;
  std::vector<QubitLocation> locations_;
};

inline MinorEmbedding build_embedding(int n) {
  require(n >= 2, "build_embedding: need n >= 2, got " + std::to_string(n));
  return MinorEmbedding(n);
}

/// Physical state whose every chain carries its logical spin's value.
inline SpinConfig embed(std::span<const Spin> logical, const MinorEmbedding& e) {
  check_length(logical, static_cast<std::size_t>(e.n()), "embed");
  check_spin_values(logical, "embed");
  SpinConfig z(static_cast<std::size_t>(e.k()));
  const int cl = e.chain_length();
  for (int x = 0; x < e.n(); ++x)
    for (int t = 0; t < cl; ++t)
      z[static_cast<std::size_t>(x * cl + t)] = logical[static_cast<std::size_t>(x)];
  return z;
}

/// Sum of z_a z_b over chain edges (an integer; equals |chain_edges| iff all
/// chains are intact).
inline long long chain_alignment_sum(std::span<const Spin> z, const MinorEmbedding& e) {
  long long s = 0;
  for (const auto& [a, b] : e.chain_edges())
    s += (z[static_cast<std::size_t>(a)] == z[static_cast<std::size_t>(b)]) ? 1 : -1;
  return s;
}

/// H = -sum_{pairs} J_ij z_a z_b over problem couplers
///     - C_ME * sum_{chain edges} z_a z_b.
/// The problem term is accumulated in codebook order and the chain term as a
/// single integer scaled once, so me_energy(embed(Z)) equals
/// logical_energy(Z) - C_ME * |chain_edges| exactly.
inline double me_energy(std::span<const Spin> z, const MinorEmbedding& e,
                        const LogicalProblem& problem, double c_me) {
  require(c_me > 0, "me_energy: C_ME must be positive");
  require(problem.n() == e.n(), "me_energy: instance and embedding sizes differ");
  check_length(z, static_cast<std::size_t>(e.k()), "me_energy");
  double energy = 0.0;
  const auto j = problem.couplings();
  const auto& cross = e.crossings();
  for (std::size_t p = 0; p < j.size(); ++p) {
    const auto& [a, b] = cross[p];
    energy -= j[p] * (z[static_cast<std::size_t>(a)] == z[static_cast<std::size_t>(b)] ? 1.0 : -1.0);
  }
  energy -= c_me * static_cast<double>(chain_alignment_sum(z, e));
  return energy;
}

struct ChainReport {
  bool intact = true;
  std::vector<int> broken;  ///< logical indices of non-constant chains
};

/// True iff every chain is constant; the report names every broken chain.
inline ChainReport chain_intact(std::span<const Spin> z, const MinorEmbedding& e) {
  check_length(z, static_cast<std::size_t>(e.k()), "chain_intact");
  ChainReport report;
  for (int x = 0; x < e.n(); ++x) {
    const auto& chain = e.chains()[static_cast<std::size_t>(x)];
    const Spin v = z[static_cast<std::size_t>(chain.front())];
    for (int q : chain)
      if (z[static_cast<std::size_t>(q)] != v) {
        report.intact = false;
        report.broken.push_back(x);
        break;
      }
  }
  return report;
}

/// Logical readout of a state with intact chains (first member of each
/// chain); meaningful only when chain_intact(z, e) holds.
inline SpinConfig unanimous_logical(std::span<const Spin> z, const MinorEmbedding& e) {
  SpinConfig logical(static_cast<std::size_t>(e.n()));
  for (int x = 0; x < e.n(); ++x)
    logical[static_cast<std::size_t>(x)] = z[static_cast<std::size_t>(e.chains()[static_cast<std::size_t>(x)].front())];
  return logical;
}

/// Structured-text adjacency dump (chains, chain edges, problem couplers,
/// qubit placement) for external visualization.
inline void dump_embedding(std::ostream& os, const MinorEmbedding& e) {
  os << "n " << e.n() << " grid " << e.grid() << " chain_length " << e.chain_length() << " k "
     << e.k() << '\n';
  for (int x = 0; x < e.n(); ++x) {
    os << "chain " << x << ":";
    for (int q : e.chains()[static_cast<std::size_t>(x)]) os << ' ' << q;
    os << '\n';
  }
  for (const auto& [a, b] : e.chain_edges()) os << "chain_edge " << a << ' ' << b << '\n';
  std::size_t p = 0;
  for (const auto& [i, j] : e.codebook().pairs()) {
    const auto& [a, b] = e.crossings()[p++];
    os << "coupler (" << i << "," << j << ") " << a << ' ' << b << '\n';
  }
  int q = 0;
  for (const auto& loc : e.locations()) {
    os << "qubit " << q++ << " cell (" << loc.row << "," << loc.col << ") side "
       << (loc.side == CellSide::horizontal ? 'H' : 'V') << " pos " << loc.pos << '\n';
  }
}

}  // namespace pbench
