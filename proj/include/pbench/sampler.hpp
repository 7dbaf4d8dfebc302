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

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pbench/common.hpp"
#include "pbench/models.hpp"
#include "pbench/rng.hpp"

namespace pbench {

struct SequenceMeta {
  Scheme scheme = Scheme::logical;
  double beta = 0.0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::string instance_id;
};

/// Ordered sample sequence with matching energies (energies empty for
/// random_states, which has no model).
struct SampleSequence {
  std::vector<SpinConfig> states;
  std::vector<double> energies;
  SequenceMeta meta;
};

/// Rejection-free single-spin-flip Metropolis chain: every step computes the
/// flip weights w_m = min(1, exp(-beta * delta_m)) for all m, selects one
/// flip with probability w_m / sum(w), and applies it. Self-loops never
/// occur; all weights are strictly positive for finite beta.
///
/// After a flip only the deltas of spins sharing a coupler or constraint
/// with the flipped spin are recomputed (the model's `affected` list); the
/// selection itself is a linear scan, which at the sizes used here is cheap
/// next to the exp() refreshes.
///
/// A sampler owns its mutable state; run one instance per thread.
template <EnergyModel M>
class RejectionFreeSampler {
 public:
  RejectionFreeSampler(const M& model, double beta, std::uint64_t seed,
                       std::optional<SpinConfig> init = std::nullopt)
      : model_(&model), beta_(beta), rng_(seed) {
    require(std::isfinite(beta) && beta >= 0.0,
            "sampler: beta must be finite and non-negative");
    const int size = model.size();
    if (init) {
      check_length(*init, static_cast<std::size_t>(size), "sampler init");
      check_spin_values(*init, "sampler init");
      z_ = std::move(*init);
    } else {
      z_ = random_config(size, rng_);
    }
    energy_ = model.energy(z_);
    delta_.resize(static_cast<std::size_t>(size));
    weight_.resize(static_cast<std::size_t>(size));
    for (int m = 0; m < size; ++m) refresh(m);
  }

  /// Flips one spin and returns its index.
  int step() {
    const int size = model_->size();
    double total = 0.0;
    for (double w : weight_) total += w;
    const double u = rng_.next_double() * total;
    int pick = size - 1;
    double acc = 0.0;
    for (int m = 0; m < size; ++m) {
      acc += weight_[static_cast<std::size_t>(m)];
      if (u < acc) {
        pick = m;
        break;
      }
    }
    energy_ += delta_[static_cast<std::size_t>(pick)];
    z_[static_cast<std::size_t>(pick)] = static_cast<Spin>(-z_[static_cast<std::size_t>(pick)]);
    for (std::int32_t m : model_->affected(pick)) refresh(m);
    return pick;
  }

  const SpinConfig& state() const noexcept { return z_; }
  /// Running energy, updated by the applied deltas (exact bookkeeping).
  double energy() const noexcept { return energy_; }
  double beta() const noexcept { return beta_; }

 private:
  void refresh(int m) {
    const double d = model_->delta(z_, m);
    delta_[static_cast<std::size_t>(m)] = d;
    // min(1, e^{-beta d}); clamped away from 0 so the weight vector can
    // never underflow to all zeros
    weight_[static_cast<std::size_t>(m)] =
        d <= 0.0 ? 1.0 : std::max(std::exp(-beta_ * d), DBL_MIN);
  }

  const M* model_;
  double beta_;
  SplitMix64 rng_;
  SpinConfig z_;
  std::vector<double> delta_, weight_;
  double energy_ = 0.0;
};

/// Runs the rejection-free chain for `samples` steps from `init` (or a
/// random state drawn from the same seed) and records the state and energy
/// after every step. Deterministic given (seed, init). `trace`, when set,
/// receives one "step,flip,energy" record per step.
template <EnergyModel M>
SampleSequence rf_mcmc_run(const M& model, double beta, std::int64_t samples,
                           std::uint64_t seed, std::optional<SpinConfig> init = std::nullopt,
                           std::ostream* trace = nullptr) {
  require(samples >= 1, "rf_mcmc_run: need at least one sample");
  RejectionFreeSampler<M> sampler(model, beta, seed, std::move(init));
  SampleSequence seq;
  seq.meta.scheme = model.scheme();
  seq.meta.beta = beta;
  seq.meta.seed = seed;
  seq.states.reserve(static_cast<std::size_t>(samples));
  seq.energies.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t t = 0; t < samples; ++t) {
    const int flipped = sampler.step();
    seq.states.push_back(sampler.state());
    seq.energies.push_back(sampler.energy());
    if (trace) *trace << t << ',' << flipped << ',' << sampler.energy() << '\n';
  }
  return seq;
}

/// `samples` independent uniform draws from {-1,+1}^size; deterministic
/// given seed. No model is involved, so energies are left empty.
inline SampleSequence random_states(int size, std::int64_t samples, std::uint64_t seed) {
  require(size >= 1, "random_states: need size >= 1");
  require(samples >= 1, "random_states: need at least one sample");
  SplitMix64 rng(seed);
  SampleSequence seq;
  seq.meta.seed = seed;
  seq.states.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t t = 0; t < samples; ++t) seq.states.push_back(random_config(size, rng));
  return seq;
}

}  // namespace pbench
