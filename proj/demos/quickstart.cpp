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

// Minimal library tour: build an instance, solve it exactly, run one
// decoded-annealing experiment, and print the success curve.

#include <iostream>

#include "pbench/pbench.hpp"

int main() {
  using namespace pbench;

  const auto problem = LogicalProblem::generate(8, 0.25, 2026);
  const auto truth = solve_exhaustive(problem);
  std::cout << "n=" << problem.n() << "  ground energy " << truth.energy << "  degenerate states "
            << truth.states.size() << "\n";

  ExperimentSpec spec;
  spec.scheme = Scheme::slhz;
  spec.arm = Arm::c;  // rejection-free chain + BF decoding
  spec.beta = 4.0;
  spec.gamma = 2.0;
  spec.samples = 4096;
  spec.reps = 200;
  spec.seed = 1;

  const SuccessCurve curve = run_experiment(spec, problem, truth);
  std::cout << "M success stderr\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    std::cout << curve.grid[i] << ' ' << curve.success[i] << ' ' << curve.stderr_[i] << "\n";

  // one-shot decode of a corrupted codeword
  SpinConfig cw = encode(problem.codebook(), truth.states.front());
  cw[5] = static_cast<Spin>(-cw[5]);
  const BfResult fixed = bf_decode(cw, problem.codebook());
  std::cout << "single corruption recovered in " << fixed.iterations << " iteration(s)\n";
  return 0;
}
