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

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pbench/codebook.hpp"
#include "pbench/common.hpp"
#include "pbench/rng.hpp"

namespace pbench {

/// All-to-all Ising problem over n logical spins: couplings J_ij for every
/// unordered pair, stored in codebook (lexicographic) order. Immutable after
/// construction and safe to share across threads.
class LogicalProblem {
 public:
  LogicalProblem(int n, std::vector<double> couplings,
                 std::optional<std::uint64_t> seed = std::nullopt,
                 std::optional<double> half_range = std::nullopt)
      : codebook_(n),
        couplings_(std::move(couplings)),
        seed_(seed),
        half_range_(half_range) {
    require(couplings_.size() == static_cast<std::size_t>(codebook_.k()),
            "LogicalProblem: expected " + std::to_string(codebook_.k()) +
                " couplings, got " + std::to_string(couplings_.size()));
    for (std::size_t p = 0; p < couplings_.size(); ++p)
      if (!std::isfinite(couplings_[p])) {
        const auto [i, j] = codebook_.pair(static_cast<int>(p));
        throw validation_error("LogicalProblem: non-finite coupling at pair (" +
                               std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
  }

  /// Random spin-glass instance with each J_ij drawn independently and
  /// uniformly from [-half_range, +half_range), one splitmix64 draw per pair
  /// in codebook order. Identical arguments reproduce identical instances
  /// bit for bit.
  static LogicalProblem generate(int n, double half_range, std::uint64_t seed) {
    require(n >= 2, "generate: need n >= 2, got " + std::to_string(n));
    require(half_range > 0, "generate: half_range must be positive");
    PairCodebook cb(n);
    std::vector<double> j(static_cast<std::size_t>(cb.k()));
    SplitMix64 rng(seed);
    for (double& v : j) v = (2.0 * rng.next_double() - 1.0) * half_range;
    return LogicalProblem(n, std::move(j), seed, half_range);
  }

  int n() const noexcept { return codebook_.n(); }
  int k() const noexcept { return codebook_.k(); }
  const PairCodebook& codebook() const noexcept { return codebook_; }

  double coupling(int i, int j) const noexcept {
    return couplings_[static_cast<std::size_t>(codebook_.index(i, j))];
  }
  std::span<const double> couplings() const noexcept { return couplings_; }

  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  std::optional<double> half_range() const noexcept { return half_range_; }

  /// FNV-1a hash of the canonical content (n, seed, half_range, coupling bit
  /// patterns); used as the instance id in output metadata.
  std::uint64_t fingerprint() const noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mixin = [&h](std::uint64_t v) {
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xFF;
        h *= 0x100000001B3ULL;
      }
    };
    mixin(static_cast<std::uint64_t>(n()));
    mixin(seed_ ? 1 + *seed_ : 0);
    mixin(half_range_ ? std::bit_cast<std::uint64_t>(*half_range_) : 0);
    for (double v : couplings_) mixin(std::bit_cast<std::uint64_t>(v));
    return h;
  }

  bool operator==(const LogicalProblem& other) const {
    return n() == other.n() && couplings_ == other.couplings_ && seed_ == other.seed_ &&
           half_range_ == other.half_range_;
  }

 private:
  PairCodebook codebook_;
  std::vector<double> couplings_;
  std::optional<std::uint64_t> seed_;
  std::optional<double> half_range_;
};

/// Energy -sum_{i<j} J_ij Z_i Z_j, accumulated in codebook order. Every other
/// Hamiltonian in the library sums its coupling term in this same order, so
/// the codeword/chain identities hold exactly in floating point.
inline double logical_energy(const LogicalProblem& problem, std::span<const Spin> logical) {
  check_length(logical, static_cast<std::size_t>(problem.n()), "logical_energy");
  double e = 0.0;
  const auto j = problem.couplings();
  std::size_t p = 0;
  for (const auto& [a, b] : problem.codebook().pairs()) {
    e -= j[p++] * (logical[static_cast<std::size_t>(a)] == logical[static_cast<std::size_t>(b)]
                       ? 1.0
                       : -1.0);
  }
  return e;
}

/// Exact ground-state data from full enumeration.
struct GroundTruth {
  double energy = 0.0;                ///< minimum of logical_energy
  std::vector<SpinConfig> states;     ///< all minimizers; closed under global flip
  double p_exhaustive = 0.0;          ///< |states| / 2^n
};

/// Enumerates all 2^n configurations and returns the exact minimum energy,
/// every minimizer, and p_exhaustive. Only the half-space Z_0 = +1 is scanned;
/// the other half is its global flip, so the returned set is closed under
/// negation by construction. Refuses n above `enumeration_cap`.
inline GroundTruth solve_exhaustive(const LogicalProblem& problem, int enumeration_cap = 24) {
  const int n = problem.n();
  if (n > enumeration_cap)
    throw resource_error("solve_exhaustive: n = " + std::to_string(n) +
                         " exceeds enumeration cap " + std::to_string(enumeration_cap));

  SpinConfig z(static_cast<std::size_t>(n), Spin{1});
  double best = logical_energy(problem, z);
  std::vector<std::uint64_t> arg{0};
  const std::uint64_t half = 1ULL << (n - 1);
  for (std::uint64_t c = 1; c < half; ++c) {
    for (int t = 1; t < n; ++t)
      z[static_cast<std::size_t>(t)] = (c >> (t - 1)) & 1 ? Spin{-1} : Spin{1};
    const double e = logical_energy(problem, z);
    if (e < best) {
      best = e;
      arg.assign(1, c);
    } else if (e == best) {
      arg.push_back(c);
    }
  }

  GroundTruth truth;
  truth.energy = best;
  truth.states.reserve(arg.size() * 2);
  for (std::uint64_t c : arg) {
    z[0] = Spin{1};
    for (int t = 1; t < n; ++t)
      z[static_cast<std::size_t>(t)] = (c >> (t - 1)) & 1 ? Spin{-1} : Spin{1};
    truth.states.push_back(z);
    truth.states.push_back(negated(z));
  }
  truth.p_exhaustive =
      static_cast<double>(truth.states.size()) / std::ldexp(1.0, n);
  return truth;
}

// ---------------------------------------------------------------------------
// Instance files
//
// A single JSON document:
//   { "format_version": 1, "n": ..., "seed": ..., "half_range": ...,
//     "couplings": [ {"i":1,"j":2,"v":...}, ... ] }
// Pairs are labeled 1-based and listed in lexicographic order; values are
// written with full round-trip precision. seed/half_range are present only
// for generated instances.
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json instance_to_json(const LogicalProblem& p) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["n"] = p.n();
  if (p.seed()) doc["seed"] = *p.seed();
  if (p.half_range()) doc["half_range"] = *p.half_range();
  nlohmann::json arr = nlohmann::json::array();
  const auto j = p.couplings();
  std::size_t idx = 0;
  for (const auto& [a, b] : p.codebook().pairs()) {
    arr.push_back({{"i", a + 1}, {"j", b + 1}, {"v", j[idx++]}});
  }
  doc["couplings"] = std::move(arr);
  return doc;
}

inline LogicalProblem instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw parse_error("instance: top-level JSON object expected");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != 1)
    throw parse_error("instance: unsupported or missing format_version");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw parse_error("instance: missing integer field 'n'");
  const int n = doc["n"].get<int>();
  if (n < 2) throw parse_error("instance: n must be >= 2, got " + std::to_string(n));
  if (!doc.contains("couplings") || !doc["couplings"].is_array())
    throw parse_error("instance: missing array field 'couplings'");

  PairCodebook cb(n);
  std::vector<double> j(static_cast<std::size_t>(cb.k()));
  std::vector<bool> seen(static_cast<std::size_t>(cb.k()), false);
  std::size_t entry_no = 0;
  for (const auto& e : doc["couplings"]) {
    const std::string where = "couplings[" + std::to_string(entry_no) + "]";
    ++entry_no;
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("v") ||
        !e["i"].is_number_integer() || !e["j"].is_number_integer() || !e["v"].is_number())
      throw parse_error(where + ": expected object {i, j, v}");
    const int i1 = e["i"].get<int>();
    const int j1 = e["j"].get<int>();
    const std::string pair_name = "(" + std::to_string(i1) + "," + std::to_string(j1) + ")";
    if (i1 < 1 || j1 < 1 || i1 > n || j1 > n)
      throw parse_error(where + ": index out of range " + pair_name + " for n=" + std::to_string(n));
    if (i1 >= j1)
      throw parse_error(where + ": indices not strictly increasing " + pair_name);
    const double v = e["v"].get<double>();
    if (!std::isfinite(v)) throw parse_error(where + ": non-finite value at pair " + pair_name);
    const auto idx = static_cast<std::size_t>(cb.index(i1 - 1, j1 - 1));
    if (seen[idx]) throw parse_error(where + ": duplicate pair " + pair_name);
    seen[idx] = true;
    j[idx] = v;
  }
  for (std::size_t idx = 0; idx < seen.size(); ++idx)
    if (!seen[idx]) {
      const auto [a, b] = cb.pair(static_cast<int>(idx));
      throw parse_error("instance: incomplete coupling table, missing pair (" +
                        std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }

  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned())
      throw parse_error("instance: 'seed' must be an integer");
    seed = doc["seed"].get<std::uint64_t>();
  }
  std::optional<double> half_range;
  if (doc.contains("half_range")) {
    if (!doc["half_range"].is_number())
      throw parse_error("instance: 'half_range' must be a number");
    half_range = doc["half_range"].get<double>();
  }
  return LogicalProblem(n, std::move(j), seed, half_range);
}

}  // namespace detail

inline void write_instance(const LogicalProblem& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("write_instance: cannot open " + path.string());
  out << detail::instance_to_json(p).dump(2) << '\n';
  if (!out) throw io_error("write_instance: write failed on " + path.string());
}

inline LogicalProblem read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_instance: cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("read_instance: " + path.string() + ": " + e.what());
  }
  return detail::instance_from_json(doc);
}

// ---------------------------------------------------------------------------
// Ground-truth sidecar: exact solve result cached next to the instance.
// ---------------------------------------------------------------------------

inline void write_ground_truth(const GroundTruth& truth, const LogicalProblem& p,
                               const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["instance_fingerprint"] = p.fingerprint();
  doc["n"] = p.n();
  doc["energy"] = truth.energy;
  doc["p_exhaustive"] = truth.p_exhaustive;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : truth.states) {
    nlohmann::json row = nlohmann::json::array();
    for (Spin v : s) row.push_back(static_cast<int>(v));
    states.push_back(std::move(row));
  }
  doc["states"] = std::move(states);
  std::ofstream out(path);
  if (!out) throw io_error("write_ground_truth: cannot open " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw io_error("write_ground_truth: write failed on " + path.string());
}

inline GroundTruth read_ground_truth(const std::filesystem::path& path,
                                     const LogicalProblem& expected_instance) {
  std::ifstream in(path);
  if (!in) throw io_error("read_ground_truth: cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("read_ground_truth: " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("format_version", 0) != 1)
    throw parse_error("read_ground_truth: unsupported or missing format_version");
  if (doc.value("instance_fingerprint", std::uint64_t{0}) != expected_instance.fingerprint())
    throw validation_error("read_ground_truth: sidecar does not match instance (stale truth file?)");
  GroundTruth truth;
  truth.energy = doc.at("energy").get<double>();
  truth.p_exhaustive = doc.at("p_exhaustive").get<double>();
  for (const auto& row : doc.at("states")) {
    SpinConfig s;
    s.reserve(row.size());
    for (const auto& v : row) {
      const int x = v.get<int>();
      if (x != 1 && x != -1) throw parse_error("read_ground_truth: state entries must be +1/-1");
      s.push_back(static_cast<Spin>(x));
    }
    if (s.size() != static_cast<std::size_t>(expected_instance.n()))
      throw parse_error("read_ground_truth: state length mismatch");
    truth.states.push_back(std::move(s));
  }
  if (truth.states.empty()) throw parse_error("read_ground_truth: no ground states listed");
  return truth;
}

}  // namespace pbench
