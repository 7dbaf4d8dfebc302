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

// Command-line front end: gen, solve, run, sweep, decode.
//
// Exit codes: 0 success; 1 I/O failure; 2 validation/parse failure.
// Absence of success in a benchmark is data, not an error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbench/pbench.hpp"

namespace fs = std::filesystem;
using namespace pbench;

namespace {

std::string hex_id(std::uint64_t fingerprint) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(fingerprint));
  return buf;
}

fs::path default_truth_path(const fs::path& instance) {
  fs::path p = instance;
  p += ".truth.json";
  return p;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("PBENCH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // experiments default to hardware concurrency
}

SpinConfig read_readout_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open readout file " + path.string());
  SpinConfig z;
  long long v = 0;
  while (in >> v) {
    if (v != 1 && v != -1)
      throw parse_error("readout file " + path.string() + ": entries must be +1 or -1, got " +
                        std::to_string(v));
    z.push_back(static_cast<Spin>(v));
  }
  if (!in.eof()) throw parse_error("readout file " + path.string() + ": non-integer token");
  if (z.empty()) throw parse_error("readout file " + path.string() + ": empty");
  return z;
}

void write_table_or_stdout(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw io_error("cannot open output file " + out);
  f << text;
  if (!f) throw io_error("write failed on " + out);
}

struct CommonRunArgs {
  std::string instance;
  std::string truth;
  std::string scheme = "logical";
  std::string arm = "a";
  double beta = 0.0;
  double gamma = 0.0;
  int reps = 1000;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  int bf_max_iter = 6;
};

ExperimentSpec build_spec(const CommonRunArgs& args, const LogicalProblem& problem) {
  ExperimentSpec spec;
  spec.scheme = scheme_from_string(args.scheme);
  spec.arm = arm_from_string(args.arm);
  spec.beta = args.beta;
  spec.gamma = args.gamma;
  spec.reps = args.reps;
  spec.seed = args.seed;
  spec.bf_max_iter = args.bf_max_iter;
  spec.instance_id = hex_id(problem.fingerprint());
  if (spec.scheme == Scheme::logical) spec.gamma = 0.0;
  return spec;
}

GroundTruth load_truth(const CommonRunArgs& args, const LogicalProblem& problem) {
  const fs::path path =
      args.truth.empty() ? default_truth_path(args.instance) : fs::path(args.truth);
  if (!fs::exists(path))
    throw io_error("ground-truth sidecar " + path.string() +
                   " not found; run `pbench solve` on the instance first");
  return read_ground_truth(path, problem);
}

int cmd_gen(int n, double range, std::uint64_t seed, const std::string& out) {
  const auto problem = LogicalProblem::generate(n, range, seed);
  write_instance(problem, out);
  const int l = (n + 3) / 4;
  std::cout << "wrote " << out << "\n"
            << "instance_id " << hex_id(problem.fingerprint()) << "\n"
            << "logical size " << n << "\n"
            << "slhz k " << problem.k() << "\n"
            << "slhz3 k " << problem.k() << "\n"
            << "me k " << n * (l + 1) << " (grid " << l << "x" << l << ", chain length "
            << l + 1 << ")\n";
  return 0;
}

int cmd_solve(const std::string& instance, int cap, std::string out) {
  const auto problem = read_instance(instance);
  const auto truth = solve_exhaustive(problem, cap);
  if (out.empty()) out = default_truth_path(instance).string();
  write_ground_truth(truth, problem, out);
  std::cout << "energy " << format_double(truth.energy) << "\n"
            << "states " << truth.states.size() << "\n"
            << "p_exhaustive " << format_double(truth.p_exhaustive) << "\n"
            << "wrote " << out << "\n";
  return 0;
}

int cmd_run(const CommonRunArgs& args, std::int64_t samples) {
  const auto problem = read_instance(args.instance);
  ExperimentSpec spec = build_spec(args, problem);
  spec.samples = samples;
  spec.validate();
  const GroundTruth truth = load_truth(args, problem);

  const SuccessCurve curve = run_experiment(spec, problem, truth, resolve_threads(args.threads));
  TableMeta meta = TableMeta::for_run(spec, args.instance, problem.n());
  std::ostringstream os;
  write_success_curve(os, curve, meta);
  write_table_or_stdout(os.str(), args.out);
  return 0;
}

int cmd_sweep(const CommonRunArgs& args, const std::vector<double>& betas,
              const std::vector<double>& gammas, std::int64_t m_fixed) {
  const auto problem = read_instance(args.instance);
  ExperimentSpec base = build_spec(args, problem);
  base.samples = m_fixed;
  // grid cells supply beta/gamma; the base carries placeholders that validate
  base.beta = betas.empty() ? 1.0 : betas.front();
  base.gamma = gammas.empty() ? 1.0 : gammas.front();
  if (base.scheme == Scheme::logical) base.gamma = 0.0;
  base.validate();
  const GroundTruth truth = load_truth(args, problem);

  const Landscape land =
      sweep_landscape(base, betas, gammas, m_fixed, problem, truth, resolve_threads(args.threads));
  TableMeta meta = TableMeta::for_run(base, args.instance, problem.n());
  meta.command = "sweep";
  meta.beta_grid = betas;
  meta.gamma_grid = gammas;
  meta.m_fixed = m_fixed;
  std::ostringstream os;
  write_landscape(os, land, meta);
  write_table_or_stdout(os.str(), args.out);
  return 0;
}

int cmd_decode(const std::string& instance, const std::string& scheme_name,
               const std::string& readout_path, std::uint64_t seed, int max_iter) {
  const auto problem = read_instance(instance);
  const Scheme scheme = scheme_from_string(scheme_name);
  const SpinConfig r = read_readout_file(readout_path);

  if (scheme == Scheme::slhz || scheme == Scheme::slhz3) {
    if (static_cast<int>(r.size()) != problem.k())
      throw validation_error("readout has " + std::to_string(r.size()) +
                             " spins, expected k=" + std::to_string(problem.k()));
    const BfResult res = bf_decode(r, problem.codebook(), max_iter);
    std::cout << "decoder bf\n"
              << "converged " << (res.converged ? "yes" : "no") << "\n"
              << "iterations " << res.iterations << "\n";
    std::cout << "logical";
    for (Spin s : res.logical) std::cout << ' ' << static_cast<int>(s);
    std::cout << "\ncodeword";
    for (Spin s : res.code) std::cout << ' ' << static_cast<int>(s);
    std::cout << "\n";
    return 0;
  }
  if (scheme == Scheme::me) {
    const MinorEmbedding e(problem.n());
    if (static_cast<int>(r.size()) != e.k())
      throw validation_error("readout has " + std::to_string(r.size()) +
                             " spins, expected k=" + std::to_string(e.k()));
    const auto report = chain_intact(r, e);
    const SpinConfig logical = mv_decode(r, e, seed);
    std::cout << "decoder mv\n"
              << "chains_intact " << (report.intact ? "yes" : "no") << "\n";
    if (!report.intact) {
      std::cout << "broken_chains";
      for (int x : report.broken) std::cout << ' ' << x;
      std::cout << "\n";
    }
    std::cout << "logical";
    for (Spin s : logical) std::cout << ' ' << static_cast<int>(s);
    std::cout << "\n";
    return 0;
  }
  throw validation_error("decode applies to slhz, slhz3, or me readouts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parity-bench: benchmarking toolkit for parity-encoded spin systems"};
  app.set_version_flag("--version", std::string("parity-bench ") + kVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a random spin-glass instance");
  int gen_n = 0;
  double gen_range = 0.25;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of logical spins")->required();
  gen->add_option("--range", gen_range, "couplings drawn uniformly from [-range, +range)");
  gen->add_option("--seed", gen_seed, "generation seed");
  gen->add_option("--out", gen_out, "instance file to write")->required();

  auto* solve = app.add_subcommand("solve", "exact ground truth by enumeration");
  std::string solve_instance, solve_out;
  int solve_cap = 24;
  solve->add_option("--instance", solve_instance, "instance file")->required();
  solve->add_option("--cap", solve_cap, "enumeration cap on n");
  solve->add_option("--out", solve_out, "truth sidecar to write (default <instance>.truth.json)");

  auto* run = app.add_subcommand("run", "success-probability curve for one experiment");
  CommonRunArgs run_args;
  std::int64_t run_samples = 0;
  run->add_option("--instance", run_args.instance, "instance file")->required();
  run->add_option("--truth", run_args.truth, "truth sidecar (default <instance>.truth.json)");
  run->add_option("--scheme", run_args.scheme, "logical|slhz|slhz3|me")->required();
  run->add_option("--arm", run_args.arm, "a|b|c|d")->required();
  run->add_option("--beta", run_args.beta, "inverse temperature (arms b, c)");
  run->add_option("--gamma", run_args.gamma, "penalty weight gamma = beta*C (arms b, c)");
  run->add_option("--samples", run_samples, "maximum sample size M")->required();
  run->add_option("--reps", run_args.reps, "repetitions (default 1000)");
  run->add_option("--seed", run_args.seed, "master seed");
  run->add_option("--out", run_args.out, "table file (default stdout)");
  run->add_option("--threads", run_args.threads, "worker threads (default: all cores)");
  run->add_option("--bf-max-iter", run_args.bf_max_iter, "BF decoder iteration cap");

  auto* sweep = app.add_subcommand("sweep", "success-probability landscape over (beta, gamma)");
  CommonRunArgs sweep_args;
  std::vector<double> sweep_betas, sweep_gammas;
  std::int64_t sweep_m = 0;
  sweep->add_option("--instance", sweep_args.instance, "instance file")->required();
  sweep->add_option("--truth", sweep_args.truth, "truth sidecar (default <instance>.truth.json)");
  sweep->add_option("--scheme", sweep_args.scheme, "logical|slhz|slhz3|me")->required();
  sweep->add_option("--arm", sweep_args.arm, "b|c")->required();
  sweep->add_option("--betas", sweep_betas, "beta grid values")->required()->delimiter(',');
  sweep->add_option("--gammas", sweep_gammas, "gamma grid values")->required()->delimiter(',');
  sweep->add_option("--m-fixed", sweep_m, "sample size per cell")->required();
  sweep->add_option("--reps", sweep_args.reps, "repetitions per cell (default 1000)");
  sweep->add_option("--seed", sweep_args.seed, "master seed");
  sweep->add_option("--out", sweep_args.out, "table file (default stdout)");
  sweep->add_option("--threads", sweep_args.threads, "worker threads (default: all cores)");
  sweep->add_option("--bf-max-iter", sweep_args.bf_max_iter, "BF decoder iteration cap");

  auto* decode = app.add_subcommand("decode", "one-shot BF/MV decode of a readout file");
  std::string dec_instance, dec_scheme, dec_readout;
  std::uint64_t dec_seed = 0;
  int dec_max_iter = 6;
  decode->add_option("--instance", dec_instance, "instance file")->required();
  decode->add_option("--scheme", dec_scheme, "slhz|slhz3|me")->required();
  decode->add_option("--readout", dec_readout, "whitespace-separated +1/-1 readout file")
      ->required();
  decode->add_option("--seed", dec_seed, "tie-break seed for mv decoding");
  decode->add_option("--max-iter", dec_max_iter, "BF iteration cap");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_n, gen_range, gen_seed, gen_out);
    if (solve->parsed()) return cmd_solve(solve_instance, solve_cap, solve_out);
    if (run->parsed()) return cmd_run(run_args, run_samples);
    if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_betas, sweep_gammas, sweep_m);
    if (decode->parsed())
      return cmd_decode(dec_instance, dec_scheme, dec_readout, dec_seed, dec_max_iter);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {  // validation, parse, resource
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
