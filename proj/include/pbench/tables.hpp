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

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pbench/common.hpp"
#include "pbench/experiments.hpp"
#include "pbench/models.hpp"

namespace pbench {

/// Shortest round-trip decimal form via std::to_chars; deterministic for a
/// given binary value, so identical runs produce identical tables.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw parse_error("bad floating-point field '" + s + "'");
  return v;
}

/// Resolved configuration echoed into (and parsed back from) every table
/// header. Thread count is deliberately absent: it never affects results.
struct TableMeta {
  std::string command;  ///< "run" or "sweep"
  std::string instance_path;
  std::string instance_id;
  int n = 0;
  ExperimentSpec spec;
  // sweep only
  std::vector<double> beta_grid;
  std::vector<double> gamma_grid;
  std::int64_t m_fixed = 0;

  static TableMeta for_run(const ExperimentSpec& spec, std::string instance_path, int n) {
    TableMeta meta;
    meta.command = "run";
    meta.instance_path = std::move(instance_path);
    meta.instance_id = spec.instance_id;
    meta.n = n;
    meta.spec = spec;
    return meta;
  }
};

namespace detail {

inline std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

inline std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(parse_double(item));
  return out;
}

inline void write_common_header(std::ostream& os, const TableMeta& meta) {
  os << "# generator: parity-bench " << kVersion << "\n";
  os << "# rng: splitmix64\n";
  os << "# command: " << meta.command << "\n";
  os << "# instance: " << meta.instance_path << "\n";
  os << "# instance_id: " << meta.instance_id << "\n";
  os << "# n: " << meta.n << "\n";
  os << "# scheme: " << to_string(meta.spec.scheme) << "\n";
  os << "# arm: " << to_string(meta.spec.arm) << "\n";
  os << "# beta: " << format_double(meta.spec.beta) << "\n";
  os << "# gamma: " << format_double(meta.spec.gamma) << "\n";
  os << "# samples: " << meta.spec.samples << "\n";
  os << "# reps: " << meta.spec.reps << "\n";
  os << "# seed: " << meta.spec.seed << "\n";
  os << "# bf_max_iter: " << meta.spec.bf_max_iter << "\n";
}

}  // namespace detail

inline void write_success_curve(std::ostream& os, const SuccessCurve& curve,
                                const TableMeta& meta) {
  os << "# parity-bench success-curve format 1\n";
  detail::write_common_header(os, meta);
  os << "scheme,arm,beta,gamma,M,success,stderr,reps\n";
  const auto& spec = curve.spec;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    os << to_string(spec.scheme) << ',' << to_string(spec.arm) << ','
       << format_double(spec.beta) << ',' << format_double(spec.gamma) << ',' << curve.grid[i]
       << ',' << format_double(curve.success[i]) << ',' << format_double(curve.stderr_[i]) << ','
       << spec.reps << '\n';
  }
}

inline void write_landscape(std::ostream& os, const Landscape& land, const TableMeta& meta) {
  os << "# parity-bench landscape format 1\n";
  detail::write_common_header(os, meta);
  os << "# m_fixed: " << land.m_fixed << "\n";
  os << "# beta_grid: " << detail::join_doubles(land.betas) << "\n";
  os << "# gamma_grid: " << detail::join_doubles(land.gammas) << "\n";
  os << "# argmax: beta=" << format_double(land.argmax_beta())
     << " gamma=" << format_double(land.argmax_gamma())
     << " success=" << format_double(land.argmax_success()) << "\n";
  os << "scheme,arm,beta,gamma,M,success,stderr\n";
  std::size_t cell = 0;
  for (double beta : land.betas) {
    for (double gamma : land.gammas) {
      os << to_string(land.base.scheme) << ',' << to_string(land.base.arm) << ','
         << format_double(beta) << ',' << format_double(gamma) << ',' << land.m_fixed << ','
         << format_double(land.success[cell]) << ',' << format_double(land.stderr_[cell]) << '\n';
      ++cell;
    }
  }
}

/// Parses the commented header back into a TableMeta; the inverse of the
/// writers above for every field needed to reproduce the table.
inline TableMeta parse_table_meta(std::istream& is) {
  TableMeta meta;
  std::map<std::string, std::string> kv;
  std::string line;
  while (is.peek() == '#' && std::getline(is, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(2, colon - 2);
    std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
    kv[key] = value;
  }
  auto need = [&kv](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw parse_error("table header: missing field '" + key + "'");
    return it->second;
  };
  meta.command = need("command");
  meta.instance_path = need("instance");
  meta.instance_id = need("instance_id");
  meta.n = std::stoi(need("n"));
  meta.spec.instance_id = meta.instance_id;
  meta.spec.scheme = scheme_from_string(need("scheme"));
  meta.spec.arm = arm_from_string(need("arm"));
  meta.spec.beta = parse_double(need("beta"));
  meta.spec.gamma = parse_double(need("gamma"));
  meta.spec.samples = std::stoll(need("samples"));
  meta.spec.reps = std::stoi(need("reps"));
  meta.spec.seed = std::stoull(need("seed"));
  meta.spec.bf_max_iter = std::stoi(need("bf_max_iter"));
  if (meta.command == "sweep") {
    meta.m_fixed = std::stoll(need("m_fixed"));
    meta.beta_grid = detail::split_doubles(need("beta_grid"));
    meta.gamma_grid = detail::split_doubles(need("gamma_grid"));
  }
  return meta;
}

}  // namespace pbench
