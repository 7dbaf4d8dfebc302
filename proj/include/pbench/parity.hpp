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

#include <array>
#include <ostream>
#include <span>
#include <vector>

#include "pbench/codebook.hpp"
#include "pbench/common.hpp"
#include "pbench/instance.hpp"

namespace pbench {

/// Weight-4 parity constraint over the unit cell (i,k),(j,k),(j,l),(i,l) with
/// j = i+1, l = k+1. Boundary cells where a member pair degenerates to a
/// diagonal (i,i) carry that member as a fixed +1 literal instead of a spin.
struct Plaquette {
  /// The four member pairs in syndrome order, as 0-based logical index pairs
  /// (i <= j); i == j marks the fixed literal.
  std::array<std::pair<int, int>, 4> members{};
  /// Physical spin indices of the free members; only the first `free_count`
  /// entries are valid.
  std::array<int, 4> spins{};
  int free_count = 0;
  /// Relative penalty weight. The data model permits per-plaquette weights,
  /// but every shipped code path keeps the uniform value 1.
  double weight = 1.0;
};

/// Weight-3 parity constraint z_ij z_jk z_ik for one logical triple i<j<k.
struct Triad {
  std::array<int, 3> logical{};  ///< the triple {i, j, k}
  std::array<int, 3> spins{};    ///< physical indices of (i,j), (j,k), (i,k)
};

/// One plaquette per (i, k), 0 <= i < k <= n-2, giving (n-1)(n-2)/2 in total.
/// The schedule reproduces the triangular unit-cell layout and yields exactly
/// k - (n-1) independent parity checks.
inline std::vector<Plaquette> build_plaquettes(const PairCodebook& cb) {
  const int n = cb.n();
  require(n >= 3, "build_plaquettes: need n >= 3, got " + std::to_string(n));
  std::vector<Plaquette> out;
  out.reserve(static_cast<std::size_t>((n - 1) * (n - 2) / 2));
  for (int i = 0; i <= n - 3; ++i) {
    for (int k = i + 1; k <= n - 2; ++k) {
      Plaquette p;
      p.members = {std::pair{i, k}, std::pair{i + 1, k}, std::pair{i + 1, k + 1},
                   std::pair{i, k + 1}};
      for (const auto& [a, b] : p.members) {
        if (a == b) continue;  // fixed z_ii literal contributes +1
        p.spins[static_cast<std::size_t>(p.free_count++)] = cb.index(a, b);
      }
      out.push_back(p);
    }
  }
  return out;
}

/// All C(n,3) logical triples in lexicographic order.
inline std::vector<Triad> build_triads(const PairCodebook& cb) {
  const int n = cb.n();
  require(n >= 3, "build_triads: need n >= 3, got " + std::to_string(n));
  std::vector<Triad> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        out.push_back(Triad{{i, j, k}, {cb.index(i, j), cb.index(j, k), cb.index(i, k)}});
  return out;
}

/// Product of the referenced spins; fixed literals contribute +1.
inline int syndrome(std::span<const Spin> z, const Plaquette& p) noexcept {
  int s = 1;
  for (int m = 0; m < p.free_count; ++m) s *= z[static_cast<std::size_t>(p.spins[static_cast<std::size_t>(m)])];
  return s;
}

inline int syndrome(std::span<const Spin> z, const Triad& t) noexcept {
  return z[static_cast<std::size_t>(t.spins[0])] * z[static_cast<std::size_t>(t.spins[1])] *
         z[static_cast<std::size_t>(t.spins[2])];
}

namespace detail {

/// -sum_p J_p z_p in codebook order; identical term order to logical_energy,
/// so the codeword identity is exact in floating point.
inline double coupling_field_energy(std::span<const Spin> z, const LogicalProblem& problem) {
  double e = 0.0;
  const auto j = problem.couplings();
  for (std::size_t p = 0; p < j.size(); ++p) e -= j[p] * (z[p] > 0 ? 1.0 : -1.0);
  return e;
}

}  // namespace detail

/// Energy of the weight-4 scheme: -sum J_p z_p + C4 * sum_p w_p (1 - s_p)/2.
inline double slhz_energy(std::span<const Spin> z, const LogicalProblem& problem,
                          std::span<const Plaquette> plaquettes, double c4) {
  require(c4 > 0, "slhz_energy: C4 must be positive");
  check_length(z, static_cast<std::size_t>(problem.k()), "slhz_energy");
  double violated = 0.0;
  for (const Plaquette& p : plaquettes)
    if (syndrome(z, p) < 0) violated += p.weight;
  return detail::coupling_field_energy(z, problem) + c4 * violated;
}

/// Energy of the weight-3 scheme: -sum J_p z_p + C3 * sum_t (1 - s_t)/2.
inline double slhz3_energy(std::span<const Spin> z, const LogicalProblem& problem,
                           std::span<const Triad> triads, double c3) {
  require(c3 > 0, "slhz3_energy: C3 must be positive");
  check_length(z, static_cast<std::size_t>(problem.k()), "slhz3_energy");
  double violated = 0.0;
  for (const Triad& t : triads)
    if (syndrome(z, t) < 0) violated += 1.0;
  return detail::coupling_field_energy(z, problem) + c3 * violated;
}

/// Debug listing, one constraint per line, pairs labeled 1-based; fixed
/// literals are marked with '*'.
inline void dump_constraints(std::ostream& os, std::span<const Plaquette> plaquettes) {
  int idx = 0;
  for (const Plaquette& p : plaquettes) {
    os << "P4[" << idx++ << "]:";
    for (const auto& [a, b] : p.members) {
      os << " (" << a + 1 << "," << b + 1 << ")";
      if (a == b) os << "*";
    }
    os << " w=" << p.weight << '\n';
  }
}

inline void dump_constraints(std::ostream& os, std::span<const Triad> triads) {
  int idx = 0;
  for (const Triad& t : triads) {
    os << "P3[" << idx++ << "]: (" << t.logical[0] + 1 << "," << t.logical[1] + 1 << ") ("
       << t.logical[1] + 1 << "," << t.logical[2] + 1 << ") (" << t.logical[0] + 1 << ","
       << t.logical[2] + 1 << ")\n";
  }
}

}  // namespace pbench
