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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "pbench/common.hpp"
#include "pbench/decoder.hpp"
#include "pbench/embedding.hpp"
#include "pbench/instance.hpp"
#include "pbench/models.hpp"
#include "pbench/rng.hpp"
#include "pbench/sampler.hpp"

namespace pbench {

/// The four benchmark arms: (a) random samples, (b) rejection-free chain,
/// (c) chain plus postreadout decoding, (d) random samples plus decoding.
enum class Arm { a, b, c, d };

inline std::string_view to_string(Arm a) noexcept {
  switch (a) {
    case Arm::a: return "a";
    case Arm::b: return "b";
    case Arm::c: return "c";
    case Arm::d: return "d";
  }
  return "?";
}

inline Arm arm_from_string(std::string_view name) {
  if (name == "a") return Arm::a;
  if (name == "b") return Arm::b;
  if (name == "c") return Arm::c;
  if (name == "d") return Arm::d;
  throw validation_error("unknown arm '" + std::string(name) + "' (expected a|b|c|d)");
}

/// One benchmark run: scheme, arm, the two Lagrange weights (beta and
/// gamma = beta * C; the penalty weight C is recovered as gamma/beta), the
/// maximum sample size, the repetition count, and the master seed.
/// Repetition r uses the child seed derive_seed(seed, r), with separate
/// chain and decoder sub-streams, so repetitions can run in any order on any
/// number of threads without changing a single bit of the results.
struct ExperimentSpec {
  Scheme scheme = Scheme::logical;
  Arm arm = Arm::a;
  double beta = 0.0;
  double gamma = 0.0;
  std::int64_t samples = 1;
  int reps = 1000;
  std::uint64_t seed = 0;
  int bf_max_iter = 6;
  std::string instance_id;

  bool penalized() const noexcept { return scheme != Scheme::logical; }
  bool uses_sampler() const noexcept { return arm == Arm::b || arm == Arm::c; }
  bool decoded() const noexcept { return arm == Arm::c || arm == Arm::d; }

  void validate() const {
    require(samples >= 1, "experiment: samples must be >= 1");
    require(reps >= 1, "experiment: reps must be >= 1");
    if (scheme == Scheme::logical && decoded())
      throw validation_error("experiment: arm " + std::string(to_string(arm)) +
                             " is invalid for scheme logical (no decoder applies)");
    if (uses_sampler()) {
      require(std::isfinite(beta) && beta > 0.0, "experiment: arm b/c requires beta > 0");
      if (penalized())
        require(std::isfinite(gamma) && gamma > 0.0,
                "experiment: arm b/c on a penalized scheme requires gamma > 0");
    }
  }

  /// Penalty weights implied by (beta, gamma) for the sampler arms.
  ModelParams model_params() const {
    ModelParams p;
    if (penalized() && uses_sampler()) {
      const double c = gamma / beta;
      p.c4 = p.c3 = p.c_me = c;
    }
    return p;
  }
};

/// Success probability versus sample size, estimated over repetitions.
/// `first_hits[r]` is the 1-based index of repetition r's first successful
/// sample (0 if none within `spec.samples`); any checkpoint grid can be
/// re-derived from it without resampling.
struct SuccessCurve {
  std::vector<std::int64_t> grid;
  std::vector<double> success;
  std::vector<double> stderr_;
  std::vector<std::int64_t> first_hits;
  ExperimentSpec spec;

  double success_at(std::int64_t m) const noexcept {
    std::int64_t hits = 0;
    for (std::int64_t h : first_hits) hits += (h != 0 && h <= m);
    return static_cast<double>(hits) / static_cast<double>(first_hits.size());
  }
};

/// Success probabilities over a beta x gamma grid at fixed sample size.
struct Landscape {
  std::vector<double> betas;
  std::vector<double> gammas;
  std::vector<double> success;  ///< row-major [beta][gamma]
  std::vector<double> stderr_;
  std::int64_t m_fixed = 0;
  int reps = 0;
  int argmax_index = 0;  ///< row-major; first cell on ties
  ExperimentSpec base;

  double argmax_beta() const noexcept {
    return betas[static_cast<std::size_t>(argmax_index) / gammas.size()];
  }
  double argmax_gamma() const noexcept {
    return gammas[static_cast<std::size_t>(argmax_index) % gammas.size()];
  }
  double argmax_success() const noexcept {
    return success[static_cast<std::size_t>(argmax_index)];
  }
};

/// P(at least one hit in M independent samples) = 1 - (1-p)^M, evaluated in
/// log1p/expm1 form so small p does not lose precision.
inline double analytic_success(double p, std::int64_t m) {
  require(p >= 0.0 && p <= 1.0, "analytic_success: p must be in [0, 1]");
  require(m >= 0, "analytic_success: M must be >= 0");
  if (m == 0 || p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(m) * std::log1p(-p));
}

/// Logarithmic checkpoint grid: powers of two up to `samples`, plus
/// `samples` itself.
inline std::vector<std::int64_t> checkpoint_grid(std::int64_t samples) {
  require(samples >= 1, "checkpoint_grid: samples must be >= 1");
  std::vector<std::int64_t> grid;
  for (std::int64_t m = 1; m <= samples && m > 0; m *= 2) grid.push_back(m);
  if (grid.back() != samples) grid.push_back(samples);
  return grid;
}

inline double binomial_stderr(double p, int reps) noexcept {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

namespace detail {

inline bool contains_state(const std::vector<SpinConfig>& set, std::span<const Spin> z) noexcept {
  for (const auto& s : set) {
    if (s.size() != z.size()) continue;
    bool equal = true;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (s[i] != z[i]) {
        equal = false;
        break;
      }
    if (equal) return true;
  }
  return false;
}

inline std::uint64_t pack_logical(std::span<const Spin> z) noexcept {
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < z.size(); ++j)
    if (z[j] < 0) bits |= std::uint64_t{1} << j;
  return bits;
}

/// Runs `count` tasks over `threads` workers (0 = hardware concurrency).
/// Task indices are claimed dynamically; each task must write only its own
/// slot of the result, keeping aggregates independent of scheduling.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Reference success test for a single sample. Arms a/b require reaching the
/// exact optimal physical state (ground logical state, its codeword, or its
/// intact-chain embedding); arms c/d require the decoded logical state to be
/// a ground state. Ground-state membership is modulo global flip for free,
/// because GroundTruth::states is closed under negation.
///
/// Owns mutable decoder scratch; copy one instance per thread.
class SuccessChecker {
 public:
  SuccessChecker(const ExperimentSpec& spec, const LogicalProblem& problem,
                 const GroundTruth& truth)
      : spec_(spec), logical_states_(truth.states) {
    spec_.validate();
    require(!truth.states.empty(), "SuccessChecker: empty ground-truth state set");
    for (const auto& s : truth.states)
      check_length(s, static_cast<std::size_t>(problem.n()), "SuccessChecker truth state");
    for (const auto& s : logical_states_) logical_packed_.push_back(detail::pack_logical(s));

    switch (spec_.scheme) {
      case Scheme::logical:
        size_ = problem.n();
        exact_ = truth.states;
        break;
      case Scheme::slhz:
      case Scheme::slhz3: {
        size_ = problem.k();
        codebook_ = std::make_shared<PairCodebook>(problem.n());
        for (const auto& s : truth.states) {
          SpinConfig cw = encode(*codebook_, s);
          if (!detail::contains_state(exact_, cw)) exact_.push_back(std::move(cw));
        }
        if (spec_.decoded() && problem.n() <= 64)
          fast_bf_.emplace(*codebook_, spec_.bf_max_iter);
        break;
      }
      case Scheme::me: {
        embedding_ = std::make_shared<MinorEmbedding>(problem.n());
        size_ = embedding_->k();
        for (const auto& s : truth.states) exact_.push_back(embed(s, *embedding_));
        break;
      }
    }
  }

  int sample_size() const noexcept { return size_; }
  const ExperimentSpec& spec() const noexcept { return spec_; }
  const std::vector<SpinConfig>& exact_targets() const noexcept { return exact_; }
  const std::vector<SpinConfig>& logical_states() const noexcept { return logical_states_; }
  const std::vector<std::uint64_t>& logical_packed() const noexcept { return logical_packed_; }
  const std::shared_ptr<const MinorEmbedding>& embedding() const noexcept { return embedding_; }
  const std::shared_ptr<const PairCodebook>& codebook() const noexcept { return codebook_; }

  /// `decode_rng` is consumed only by majority-vote tie breaking.
  bool check(std::span<const Spin> sample, SplitMix64& decode_rng) {
    check_length(sample, static_cast<std::size_t>(size_), "SuccessChecker sample");
    if (!spec_.decoded()) return detail::contains_state(exact_, sample);
    switch (spec_.scheme) {
      case Scheme::slhz:
      case Scheme::slhz3: {
        if (fast_bf_) {
          rows_.resize(static_cast<std::size_t>(codebook_->n()));
          fast_bf_->pack(sample, *codebook_, rows_.data());
          const auto st = fast_bf_->run(rows_.data());
          if (!st.converged) return false;
          return contains_packed(rows_[0]);
        }
        const BfResult r = bf_decode(sample, *codebook_, spec_.bf_max_iter);
        return r.converged && contains_packed(detail::pack_logical(r.logical));
      }
      case Scheme::me: {
        const SpinConfig logical = mv_decode(sample, *embedding_, decode_rng.next());
        return contains_packed(detail::pack_logical(logical));
      }
      default:
        return false;  // unreachable; validated in the constructor
    }
  }

  bool contains_packed(std::uint64_t bits) const noexcept {
    for (std::uint64_t t : logical_packed_)
      if (t == bits) return true;
    return false;
  }

 private:
  ExperimentSpec spec_;
  int size_ = 0;
  std::vector<SpinConfig> exact_;
  std::vector<SpinConfig> logical_states_;
  std::vector<std::uint64_t> logical_packed_;
  std::shared_ptr<const MinorEmbedding> embedding_;
  std::shared_ptr<const PairCodebook> codebook_;
  std::optional<FastBfDecoder> fast_bf_;  // by value: each checker copy owns its scratch
  std::vector<std::uint64_t> rows_;
};

/// One-off reference form of the success test.
inline bool is_success(std::span<const Spin> sample, const ExperimentSpec& spec,
                       const LogicalProblem& problem, const GroundTruth& truth,
                       std::uint64_t decode_seed = 0) {
  SuccessChecker checker(spec, problem, truth);
  SplitMix64 rng(decode_seed);
  return checker.check(sample, rng);
}

namespace detail {

/// Success detector for arm b: tracks the Hamming distance to each exact
/// target and reports a hit when any reaches zero.
class ExactMatchDetector {
 public:
  explicit ExactMatchDetector(const std::vector<SpinConfig>& targets) : targets_(&targets) {}

  void init(std::span<const Spin> z) {
    dist_.assign(targets_->size(), 0);
    for (std::size_t t = 0; t < targets_->size(); ++t)
      for (std::size_t i = 0; i < z.size(); ++i)
        dist_[t] += ((*targets_)[t][i] != z[i]);
  }

  bool on_flip(std::span<const Spin> z, int flipped) noexcept {
    bool hit = false;
    for (std::size_t t = 0; t < targets_->size(); ++t) {
      dist_[t] += ((*targets_)[t][static_cast<std::size_t>(flipped)] ==
                   z[static_cast<std::size_t>(flipped)])
                      ? -1
                      : +1;
      hit |= dist_[t] == 0;
    }
    return hit;
  }

 private:
  const std::vector<SpinConfig>* targets_;
  std::vector<int> dist_;
};

/// Success detector for arm c on the parity schemes: maintains the bit-packed
/// parity matrix incrementally (one toggled pair per flip) and BF-decodes
/// every sample.
class BfDetector {
 public:
  BfDetector(const PairCodebook& cb, int max_iter, const std::vector<std::uint64_t>& targets)
      : cb_(&cb), bf_(cb, max_iter), targets_(&targets) {}

  void init(std::span<const Spin> z) {
    rows_.resize(static_cast<std::size_t>(cb_->n()));
    buf_.resize(rows_.size());
    bf_.pack(z, *cb_, rows_.data());
  }

  bool on_flip(std::span<const Spin>, int flipped) {
    const auto [i, j] = cb_->pair(flipped);
    rows_[static_cast<std::size_t>(i)] ^= std::uint64_t{1} << j;
    rows_[static_cast<std::size_t>(j)] ^= std::uint64_t{1} << i;
    for (std::size_t t = 0; t < rows_.size(); ++t) buf_[t] = rows_[t];
    const auto st = bf_.run(buf_.data());
    if (!st.converged) return false;
    for (std::uint64_t t : *targets_)
      if (t == buf_[0]) return true;
    return false;
  }

 private:
  const PairCodebook* cb_;
  FastBfDecoder bf_;
  const std::vector<std::uint64_t>* targets_;
  std::vector<std::uint64_t> rows_, buf_;
};

/// Success detector for arm c on the minor embedding: maintains per-chain
/// spin sums and majority-votes every sample; coin tosses for exact ties come
/// from the repetition's decoder sub-stream.
class MvDetector {
 public:
  MvDetector(const MinorEmbedding& e, const std::vector<std::uint64_t>& targets,
             SplitMix64 decode_rng)
      : e_(&e), targets_(&targets), rng_(decode_rng) {}

  void init(std::span<const Spin> z) {
    sums_.assign(static_cast<std::size_t>(e_->n()), 0);
    for (int x = 0; x < e_->n(); ++x)
      for (int q : e_->chains()[static_cast<std::size_t>(x)])
        sums_[static_cast<std::size_t>(x)] += z[static_cast<std::size_t>(q)];
  }

  bool on_flip(std::span<const Spin> z, int flipped) {
    const int x = e_->chain_of(flipped);
    sums_[static_cast<std::size_t>(x)] += 2 * z[static_cast<std::size_t>(flipped)];
    // one decode seed per sample, matching SuccessChecker::check bit for bit
    SplitMix64 coins(rng_.next());
    std::uint64_t bits = 0;
    for (int i = 0; i < e_->n(); ++i) {
      const int s = sums_[static_cast<std::size_t>(i)];
      const Spin v = s > 0 ? Spin{1} : (s < 0 ? Spin{-1} : coins.next_spin());
      if (v < 0) bits |= std::uint64_t{1} << i;
    }
    for (std::uint64_t t : *targets_)
      if (t == bits) return true;
    return false;
  }

 private:
  const MinorEmbedding* e_;
  const std::vector<std::uint64_t>* targets_;
  SplitMix64 rng_;
  std::vector<int> sums_;
};

template <EnergyModel M, typename Detector>
std::int64_t chain_rep(const M& model, double beta, std::int64_t samples,
                       std::uint64_t chain_seed, Detector&& detector) {
  RejectionFreeSampler<M> sampler(model, beta, chain_seed);
  detector.init(sampler.state());
  for (std::int64_t t = 1; t <= samples; ++t) {
    const int flipped = sampler.step();
    if (detector.on_flip(sampler.state(), flipped)) return t;
  }
  return 0;
}

template <EnergyModel M>
std::int64_t run_sampler_rep(const M& model, const ExperimentSpec& spec,
                             const SuccessChecker& checker, std::uint64_t child) {
  const std::uint64_t chain_seed = derive_seed(child, 0);
  const std::uint64_t decode_seed = derive_seed(child, 1);
  if (spec.arm == Arm::b)
    return chain_rep(model, spec.beta, spec.samples, chain_seed,
                     ExactMatchDetector(checker.exact_targets()));
  if (spec.scheme == Scheme::me)
    return chain_rep(model, spec.beta, spec.samples, chain_seed,
                     MvDetector(*checker.embedding(), checker.logical_packed(),
                                SplitMix64(decode_seed)));
  return chain_rep(model, spec.beta, spec.samples, chain_seed,
                   BfDetector(*checker.codebook(), spec.bf_max_iter, checker.logical_packed()));
}

}  // namespace detail

/// Estimates the success curve for one experiment: `reps` independent
/// repetitions, repetition r seeded by derive_seed(spec.seed, r); arms a/d
/// draw `samples` uniform states, arms b/c run the rejection-free chain from
/// a random initial state. Records per-repetition first-hit times and
/// aggregates them on the checkpoint grid. Deterministic given the spec,
/// whatever `threads` is.
inline SuccessCurve run_experiment(const ExperimentSpec& spec, const LogicalProblem& problem,
                                   const GroundTruth& truth, int threads = 0) {
  spec.validate();
  SuccessCurve curve;
  curve.spec = spec;
  curve.grid = checkpoint_grid(spec.samples);
  curve.first_hits.assign(static_cast<std::size_t>(spec.reps), 0);

  const SuccessChecker shared_checker(spec, problem, truth);

  if (spec.uses_sampler()) {
    const AnyModel model = make_model(spec.scheme, problem, spec.model_params());
    std::visit(
        [&](const auto& m) {
          detail::parallel_for(spec.reps, threads, [&](int r) {
            curve.first_hits[static_cast<std::size_t>(r)] = detail::run_sampler_rep(
                m, spec, shared_checker, derive_seed(spec.seed, static_cast<std::uint64_t>(r)));
          });
        },
        model);
  } else {
    detail::parallel_for(spec.reps, threads, [&](int r) {
      SuccessChecker checker(shared_checker);
      const std::uint64_t child = derive_seed(spec.seed, static_cast<std::uint64_t>(r));
      SplitMix64 gen(derive_seed(child, 0));
      SplitMix64 dec(derive_seed(child, 1));
      SpinConfig z(static_cast<std::size_t>(checker.sample_size()));
      std::int64_t hit = 0;
      for (std::int64_t t = 1; t <= spec.samples; ++t) {
        random_config_into(z, gen);
        if (checker.check(z, dec)) {
          hit = t;
          break;
        }
      }
      curve.first_hits[static_cast<std::size_t>(r)] = hit;
    });
  }

  curve.success.reserve(curve.grid.size());
  curve.stderr_.reserve(curve.grid.size());
  for (std::int64_t m : curve.grid) {
    const double p = curve.success_at(m);
    curve.success.push_back(p);
    curve.stderr_.push_back(binomial_stderr(p, spec.reps));
  }
  return curve;
}

/// Runs run_experiment at every (beta, gamma) cell with M = m_fixed and the
/// base spec's master seed. Sharing the master seed across cells makes a 1x1
/// sweep identical to a plain run and gives the grid common random numbers;
/// within a cell, repetitions derive their child seeds as usual.
inline Landscape sweep_landscape(const ExperimentSpec& base, std::span<const double> betas,
                                 std::span<const double> gammas, std::int64_t m_fixed,
                                 const LogicalProblem& problem, const GroundTruth& truth,
                                 int threads = 0) {
  require(!betas.empty() && !gammas.empty(), "sweep_landscape: grids must be non-empty");
  require(base.uses_sampler(), "sweep_landscape: arm must be b or c");
  Landscape land;
  land.base = base;
  land.betas.assign(betas.begin(), betas.end());
  land.gammas.assign(gammas.begin(), gammas.end());
  land.m_fixed = m_fixed;
  land.reps = base.reps;
  land.success.reserve(betas.size() * gammas.size());
  land.stderr_.reserve(betas.size() * gammas.size());
  for (double beta : betas) {
    for (double gamma : gammas) {
      ExperimentSpec cell = base;
      cell.beta = beta;
      cell.gamma = gamma;
      cell.samples = m_fixed;
      const SuccessCurve curve = run_experiment(cell, problem, truth, threads);
      land.success.push_back(curve.success.back());
      land.stderr_.push_back(curve.stderr_.back());
    }
  }
  land.argmax_index = 0;
  for (std::size_t i = 1; i < land.success.size(); ++i)
    if (land.success[i] > land.success[static_cast<std::size_t>(land.argmax_index)])
      land.argmax_index = static_cast<int>(i);
  return land;
}

}  // namespace pbench
