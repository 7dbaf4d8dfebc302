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
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pbench/codebook.hpp"
#include "pbench/common.hpp"
#include "pbench/embedding.hpp"
#include "pbench/instance.hpp"
#include "pbench/parity.hpp"

namespace pbench {

enum class Scheme { logical, slhz, slhz3, me };

inline std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::logical: return "logical";
    case Scheme::slhz: return "slhz";
    case Scheme::slhz3: return "slhz3";
    case Scheme::me: return "me";
  }
  return "?";
}

inline Scheme scheme_from_string(std::string_view name) {
  if (name == "logical") return Scheme::logical;
  if (name == "slhz") return Scheme::slhz;
  if (name == "slhz3") return Scheme::slhz3;
  if (name == "me") return Scheme::me;
  throw validation_error("unknown scheme '" + std::string(name) +
                         "' (expected logical|slhz|slhz3|me)");
}

/// Uniform interface over the four Hamiltonians. `energy` is a full
/// recompute; `delta(z, m)` is the exact energy change of flipping spin m,
/// evaluated from the spins that share a coupler or constraint with m;
/// `affected(m)` lists every spin whose delta changes when m flips (m
/// included). Models are immutable and safe to share across threads.
template <typename M>
concept EnergyModel = requires(const M& m, std::span<const Spin> z, int i) {
  { m.size() } -> std::convertible_to<int>;
  { m.scheme() } -> std::same_as<Scheme>;
  { m.energy(z) } -> std::convertible_to<double>;
  { m.delta(z, i) } -> std::convertible_to<double>;
  { m.affected(i) } -> std::convertible_to<std::span<const std::int32_t>>;
};

namespace detail {

/// Per-spin neighbor lists in compressed row form.
struct AdjacencyLists {
  std::vector<std::int32_t> flat;
  std::vector<std::int32_t> offsets;  // size + 1 entries

  std::span<const std::int32_t> row(int i) const noexcept {
    return {flat.data() + offsets[static_cast<std::size_t>(i)],
            flat.data() + offsets[static_cast<std::size_t>(i) + 1]};
  }

  static AdjacencyLists from_rows(const std::vector<std::vector<std::int32_t>>& rows) {
    AdjacencyLists a;
    a.offsets.reserve(rows.size() + 1);
    a.offsets.push_back(0);
    for (const auto& r : rows) {
      a.flat.insert(a.flat.end(), r.begin(), r.end());
      a.offsets.push_back(static_cast<std::int32_t>(a.flat.size()));
    }
    return a;
  }
};

/// Rows of unique sorted entries, always including the diagonal element.
inline AdjacencyLists dedup_adjacency(std::vector<std::vector<std::int32_t>>&& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    r.push_back(static_cast<std::int32_t>(i));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return AdjacencyLists::from_rows(rows);
}

}  // namespace detail

/// Eq.-style all-to-all model over the n logical spins.
class LogicalModel {
 public:
  explicit LogicalModel(const LogicalProblem& problem)
      : problem_(problem), jmat_(static_cast<std::size_t>(problem.n()) * problem.n(), 0.0) {
    const int n = problem.n();
    for (const auto& [i, j] : problem.codebook().pairs()) {
      const double v = problem.coupling(i, j);
      jmat_[static_cast<std::size_t>(i) * n + j] = v;
      jmat_[static_cast<std::size_t>(j) * n + i] = v;
    }
    all_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all_[static_cast<std::size_t>(i)] = i;
  }

  int size() const noexcept { return problem_.n(); }
  Scheme scheme() const noexcept { return Scheme::logical; }
  const LogicalProblem& problem() const noexcept { return problem_; }

  double energy(std::span<const Spin> z) const { return logical_energy(problem_, z); }

  double delta(std::span<const Spin> z, int m) const noexcept {
    const int n = problem_.n();
    const double* row = jmat_.data() + static_cast<std::size_t>(m) * n;
    double field = 0.0;
    for (int j = 0; j < n; ++j) field += row[j] * z[static_cast<std::size_t>(j)];
    return 2.0 * static_cast<double>(z[static_cast<std::size_t>(m)]) * field;
  }

  // all-to-all: every delta changes on every flip
  std::span<const std::int32_t> affected(int) const noexcept { return all_; }

 private:
  LogicalProblem problem_;
  std::vector<double> jmat_;
  std::vector<std::int32_t> all_;
};

namespace detail {

/// Shared machinery for the two parity-penalty models: local field J_p plus
/// a set of product constraints touching each spin.
class ParityPenaltyModel {
 public:
  ParityPenaltyModel(const LogicalProblem& problem, double penalty, Scheme scheme)
      : problem_(problem), penalty_(penalty), scheme_(scheme) {
    require(penalty > 0, std::string(to_string(scheme)) + ": penalty weight must be positive");
  }

  int size() const noexcept { return problem_.k(); }
  Scheme scheme() const noexcept { return scheme_; }
  const LogicalProblem& problem() const noexcept { return problem_; }
  double penalty() const noexcept { return penalty_; }

  double delta(std::span<const Spin> z, int m) const noexcept {
    const auto jm = problem_.couplings()[static_cast<std::size_t>(m)];
    double d = 2.0 * jm * z[static_cast<std::size_t>(m)];
    for (std::int32_t c : constraints_of_.row(m)) {
      const auto begin = static_cast<std::size_t>(constraint_offsets_[static_cast<std::size_t>(c)]);
      const auto end = static_cast<std::size_t>(constraint_offsets_[static_cast<std::size_t>(c) + 1]);
      int s = 1;
      for (std::size_t t = begin; t < end; ++t)
        s *= z[static_cast<std::size_t>(constraint_spins_[t])];
      d += penalty_ * constraint_weights_[static_cast<std::size_t>(c)] * s;
    }
    return d;
  }

  std::span<const std::int32_t> affected(int m) const noexcept { return affected_.row(m); }

 protected:
  void finalize_constraints(const std::vector<std::vector<std::int32_t>>& constraint_members,
                            std::vector<double> weights) {
    constraint_weights_ = std::move(weights);
    constraint_offsets_.push_back(0);
    for (const auto& members : constraint_members) {
      constraint_spins_.insert(constraint_spins_.end(), members.begin(), members.end());
      constraint_offsets_.push_back(static_cast<std::int32_t>(constraint_spins_.size()));
    }
    const int k = problem_.k();
    std::vector<std::vector<std::int32_t>> per_spin(static_cast<std::size_t>(k));
    std::vector<std::vector<std::int32_t>> neighbors(static_cast<std::size_t>(k));
    for (std::size_t c = 0; c < constraint_members.size(); ++c) {
      for (std::int32_t a : constraint_members[c]) {
        per_spin[static_cast<std::size_t>(a)].push_back(static_cast<std::int32_t>(c));
        for (std::int32_t b : constraint_members[c])
          if (b != a) neighbors[static_cast<std::size_t>(a)].push_back(b);
      }
    }
    constraints_of_ = detail::AdjacencyLists::from_rows(per_spin);
    affected_ = detail::dedup_adjacency(std::move(neighbors));
  }

  LogicalProblem problem_;
  double penalty_;
  Scheme scheme_;
  std::vector<std::int32_t> constraint_spins_;
  std::vector<std::int32_t> constraint_offsets_;
  std::vector<double> constraint_weights_;
  detail::AdjacencyLists constraints_of_;
  detail::AdjacencyLists affected_;
};

}  // namespace detail

/// Weight-4 plaquette scheme over k = C(n,2) physical spins.
class SlhzModel : public detail::ParityPenaltyModel {
 public:
  SlhzModel(const LogicalProblem& problem, double c4)
      : ParityPenaltyModel(problem, c4, Scheme::slhz),
        plaquettes_(build_plaquettes(problem.codebook())) {
    std::vector<std::vector<std::int32_t>> members;
    std::vector<double> weights;
    members.reserve(plaquettes_.size());
    for (const Plaquette& p : plaquettes_) {
      members.emplace_back(p.spins.begin(), p.spins.begin() + p.free_count);
      weights.push_back(p.weight);
    }
    finalize_constraints(members, std::move(weights));
  }

  double energy(std::span<const Spin> z) const {
    return slhz_energy(z, problem_, plaquettes_, penalty_);
  }

  const std::vector<Plaquette>& plaquettes() const noexcept { return plaquettes_; }

 private:
  std::vector<Plaquette> plaquettes_;
};

/// Weight-3 triad scheme over k = C(n,2) physical spins.
class Slhz3Model : public detail::ParityPenaltyModel {
 public:
  Slhz3Model(const LogicalProblem& problem, double c3)
      : ParityPenaltyModel(problem, c3, Scheme::slhz3), triads_(build_triads(problem.codebook())) {
    std::vector<std::vector<std::int32_t>> members;
    members.reserve(triads_.size());
    for (const Triad& t : triads_)
      members.push_back({t.spins[0], t.spins[1], t.spins[2]});
    finalize_constraints(members, std::vector<double>(triads_.size(), 1.0));
  }

  double energy(std::span<const Spin> z) const {
    return slhz3_energy(z, problem_, triads_, penalty_);
  }

  const std::vector<Triad>& triads() const noexcept { return triads_; }

 private:
  std::vector<Triad> triads_;
};

/// Minor-embedded model over k = n(L+1) physical spins: problem couplers on
/// chain crossings plus ferromagnetic chain couplers of strength C_ME.
class MinorModel {
 public:
  MinorModel(const LogicalProblem& problem, double c_me)
      : problem_(problem), embedding_(std::make_shared<MinorEmbedding>(problem.n())), c_me_(c_me) {
    require(c_me > 0, "me: C_ME must be positive");
    const int k = embedding_->k();
    std::vector<std::vector<std::int32_t>> nbr(static_cast<std::size_t>(k));
    std::vector<std::vector<double>> w(static_cast<std::size_t>(k));
    auto add = [&](int a, int b, double weight) {
      nbr[static_cast<std::size_t>(a)].push_back(b);
      w[static_cast<std::size_t>(a)].push_back(weight);
      nbr[static_cast<std::size_t>(b)].push_back(a);
      w[static_cast<std::size_t>(b)].push_back(weight);
    };
    std::size_t p = 0;
    for (const auto& [a, b] : embedding_->crossings())
      add(a, b, problem.couplings()[p++]);
    for (const auto& [a, b] : embedding_->chain_edges()) add(a, b, c_me);

    neighbor_offsets_.push_back(0);
    std::vector<std::vector<std::int32_t>> affected_rows(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      neighbor_spins_.insert(neighbor_spins_.end(), nbr[static_cast<std::size_t>(a)].begin(),
                             nbr[static_cast<std::size_t>(a)].end());
      neighbor_weights_.insert(neighbor_weights_.end(), w[static_cast<std::size_t>(a)].begin(),
                               w[static_cast<std::size_t>(a)].end());
      neighbor_offsets_.push_back(static_cast<std::int32_t>(neighbor_spins_.size()));
      affected_rows[static_cast<std::size_t>(a)] = nbr[static_cast<std::size_t>(a)];
    }
    affected_ = detail::dedup_adjacency(std::move(affected_rows));
  }

  int size() const noexcept { return embedding_->k(); }
  Scheme scheme() const noexcept { return Scheme::me; }
  const LogicalProblem& problem() const noexcept { return problem_; }
  const MinorEmbedding& embedding() const noexcept { return *embedding_; }
  double penalty() const noexcept { return c_me_; }

  double energy(std::span<const Spin> z) const {
    return me_energy(z, *embedding_, problem_, c_me_);
  }

  double delta(std::span<const Spin> z, int m) const noexcept {
    const auto begin = static_cast<std::size_t>(neighbor_offsets_[static_cast<std::size_t>(m)]);
    const auto end = static_cast<std::size_t>(neighbor_offsets_[static_cast<std::size_t>(m) + 1]);
    double field = 0.0;
    for (std::size_t t = begin; t < end; ++t)
      field += neighbor_weights_[t] * z[static_cast<std::size_t>(neighbor_spins_[t])];
    return 2.0 * static_cast<double>(z[static_cast<std::size_t>(m)]) * field;
  }

  std::span<const std::int32_t> affected(int m) const noexcept { return affected_.row(m); }

 private:
  LogicalProblem problem_;
  std::shared_ptr<const MinorEmbedding> embedding_;
  double c_me_;
  std::vector<std::int32_t> neighbor_spins_;
  std::vector<double> neighbor_weights_;
  std::vector<std::int32_t> neighbor_offsets_;
  detail::AdjacencyLists affected_;
};

static_assert(EnergyModel<LogicalModel>);
static_assert(EnergyModel<SlhzModel>);
static_assert(EnergyModel<Slhz3Model>);
static_assert(EnergyModel<MinorModel>);

/// Penalty weights per scheme; a scheme reads only its own field.
struct ModelParams {
  double c4 = 0.0;
  double c3 = 0.0;
  double c_me = 0.0;
};

using AnyModel = std::variant<LogicalModel, SlhzModel, Slhz3Model, MinorModel>;

/// Builds the model for `scheme`, validating that its penalty weight is
/// supplied and positive.
inline AnyModel make_model(Scheme scheme, const LogicalProblem& problem,
                           const ModelParams& params = {}) {
  switch (scheme) {
    case Scheme::logical:
      return LogicalModel(problem);
    case Scheme::slhz:
      require(params.c4 > 0, "make_model: scheme slhz requires C4 > 0");
      return SlhzModel(problem, params.c4);
    case Scheme::slhz3:
      require(params.c3 > 0, "make_model: scheme slhz3 requires C3 > 0");
      return Slhz3Model(problem, params.c3);
    case Scheme::me:
      require(params.c_me > 0, "make_model: scheme me requires C_ME > 0");
      return MinorModel(problem, params.c_me);
  }
  throw validation_error("make_model: unknown scheme");
}

inline int model_size(const AnyModel& m) {
  return std::visit([](const auto& v) { return v.size(); }, m);
}

}  // namespace pbench
