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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pbench/instance.hpp"
#include "pbench/rng.hpp"

using namespace pbench;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("pbench_test_" + name);
}

LogicalProblem uniform_problem(int n, double j) {
  const int k = n * (n - 1) / 2;
  return LogicalProblem(n, std::vector<double>(static_cast<std::size_t>(k), j));
}

// independent brute force over all 2^n states, summing pairs the naive way
std::pair<double, int> brute_force_min(const LogicalProblem& p) {
  const int n = p.n();
  double best = 1e300;
  int count = 0;
  for (int c = 0; c < (1 << n); ++c) {
    SpinConfig z(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) z[static_cast<std::size_t>(t)] = (c >> t) & 1 ? -1 : 1;
    double e = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e -= p.coupling(i, j) * z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(j)];
    if (e < best - 1e-12) {
      best = e;
      count = 1;
    } else if (std::abs(e - best) <= 1e-12) {
      ++count;
    }
  }
  return {best, count};
}

}  // namespace

TEST_CASE("generate_instance: pair count, range, determinism", "[instance]") {
  const auto p = LogicalProblem::generate(14, 0.25, 77);
  REQUIRE(p.k() == 91);
  for (double v : p.couplings()) {
    REQUIRE(v >= -0.25);
    REQUIRE(v <= 0.25);
  }

  const auto q = LogicalProblem::generate(2, 0.25, 77);
  REQUIRE(q.k() == 1);

  const auto a = LogicalProblem::generate(5, 0.25, 123);
  const auto b = LogicalProblem::generate(5, 0.25, 123);
  REQUIRE(a == b);
  REQUIRE(a.fingerprint() == b.fingerprint());
  REQUIRE(a.fingerprint() != LogicalProblem::generate(5, 0.25, 124).fingerprint());

  CHECK_THROWS_AS(LogicalProblem::generate(1, 0.25, 0), validation_error);
  CHECK_THROWS_AS(LogicalProblem::generate(5, 0.0, 0), validation_error);
  CHECK_THROWS_AS(LogicalProblem::generate(5, -1.0, 0), validation_error);
}

TEST_CASE("logical_energy on hand instances", "[instance]") {
  const auto p = uniform_problem(3, 0.25);
  const SpinConfig up{1, 1, 1};
  REQUIRE(logical_energy(p, up) == -0.75);

  const SpinConfig mixed{1, -1, 1};
  REQUIRE(logical_energy(p, mixed) == logical_energy(p, negated(mixed)));

  SpinConfig bad{1, 1};
  CHECK_THROWS_AS(logical_energy(p, bad), validation_error);
}

TEST_CASE("logical_energy is globally flip invariant", "[instance]") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = LogicalProblem::generate(9, 0.25, 1000 + static_cast<std::uint64_t>(trial));
    const SpinConfig z = random_config(9, rng);
    REQUIRE(logical_energy(p, z) == logical_energy(p, negated(z)));
  }
}

TEST_CASE("solve_exhaustive on tiny instances", "[instance]") {
  SECTION("n=2 ferromagnetic pair") {
    const LogicalProblem p(2, {0.25});
    const auto truth = solve_exhaustive(p);
    REQUIRE(truth.energy == -0.25);
    REQUIRE(truth.states.size() == 2);
    REQUIRE(truth.p_exhaustive == 0.5);
    REQUIRE(truth.states[0] == SpinConfig{1, 1});
    REQUIRE(truth.states[1] == SpinConfig{-1, -1});
  }

  SECTION("n=3 uniform antiferromagnet: 6-fold degenerate, E = -1/4") {
    const auto p = uniform_problem(3, -0.25);
    const auto truth = solve_exhaustive(p);
    REQUIRE(truth.energy == -0.25);
    REQUIRE(truth.states.size() == 6);
    REQUIRE(truth.p_exhaustive == 0.75);
  }
}

TEST_CASE("solve_exhaustive matches the naive enumeration oracle", "[instance]") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(derive_seed(900, static_cast<std::uint64_t>(trial)) % 11);
    const auto p = LogicalProblem::generate(n, 0.25, 3000 + static_cast<std::uint64_t>(trial));
    const auto truth = solve_exhaustive(p);
    const auto [oracle_min, oracle_count] = brute_force_min(p);
    REQUIRE(truth.energy == Catch::Approx(oracle_min).margin(1e-12));
    REQUIRE(static_cast<int>(truth.states.size()) == oracle_count);
    for (const auto& s : truth.states)
      REQUIRE(logical_energy(p, s) == truth.energy);
  }
}

TEST_CASE("solve_exhaustive states are closed under global flip", "[instance]") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = LogicalProblem::generate(7, 0.25, 5000 + static_cast<std::uint64_t>(trial));
    const auto truth = solve_exhaustive(p);
    for (const auto& s : truth.states) {
      const SpinConfig flipped = negated(s);
      bool found = false;
      for (const auto& t : truth.states) found |= (t == flipped);
      REQUIRE(found);
    }
  }
}

TEST_CASE("solve_exhaustive refuses n above the cap", "[instance]") {
  const auto p = LogicalProblem::generate(25, 0.25, 1);
  CHECK_THROWS_AS(solve_exhaustive(p), resource_error);
  CHECK_NOTHROW(solve_exhaustive(LogicalProblem::generate(10, 0.25, 1), 10));
}

TEST_CASE("instance file round-trip", "[instance]") {
  const auto p = LogicalProblem::generate(8, 0.25, 424242);
  const auto path = temp_file("roundtrip.json");
  write_instance(p, path);
  const auto q = read_instance(path);
  REQUIRE(p == q);
  REQUIRE(q.seed().has_value());
  REQUIRE(*q.seed() == 424242);
  REQUIRE(q.half_range().has_value());

  // writing twice gives identical bytes
  const auto path2 = temp_file("roundtrip2.json");
  write_instance(p, path2);
  std::ifstream f1(path), f2(path2);
  const std::string s1((std::istreambuf_iterator<char>(f1)), {});
  const std::string s2((std::istreambuf_iterator<char>(f2)), {});
  REQUIRE(s1 == s2);
  fs::remove(path);
  fs::remove(path2);
}

TEST_CASE("instance parser rejects malformed files", "[instance]") {
  const auto path = temp_file("bad.json");
  auto write_raw = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };

  auto base = [] {
    nlohmann::json doc;
    doc["format_version"] = 1;
    doc["n"] = 3;
    doc["couplings"] = nlohmann::json::array({
        {{"i", 1}, {"j", 2}, {"v", 0.1}},
        {{"i", 1}, {"j", 3}, {"v", 0.2}},
        {{"i", 2}, {"j", 3}, {"v", 0.3}},
    });
    return doc;
  };

  SECTION("not json") {
    write_raw("this is not json");
    CHECK_THROWS_AS(read_instance(path), parse_error);
  }

  SECTION("indices not strictly increasing") {
    auto doc = base();
    doc["couplings"][1] = {{"i", 3}, {"j", 2}, {"v", 0.2}};
    write_raw(doc.dump());
    CHECK_THROWS_WITH(read_instance(path),
                      Catch::Matchers::ContainsSubstring("not strictly increasing"));
  }

  SECTION("duplicate pair") {
    auto doc = base();
    doc["couplings"][1] = {{"i", 1}, {"j", 2}, {"v", 0.2}};
    write_raw(doc.dump());
    CHECK_THROWS_WITH(read_instance(path), Catch::Matchers::ContainsSubstring("duplicate pair"));
  }

  SECTION("incomplete coupling table") {
    auto doc = base();
    doc["couplings"].erase(2);
    write_raw(doc.dump());
    CHECK_THROWS_WITH(read_instance(path),
                      Catch::Matchers::ContainsSubstring("incomplete coupling table"));
  }

  SECTION("index out of range") {
    auto doc = base();
    doc["couplings"][2] = {{"i", 2}, {"j", 4}, {"v", 0.3}};
    write_raw(doc.dump());
    CHECK_THROWS_WITH(read_instance(path), Catch::Matchers::ContainsSubstring("out of range"));
  }

  SECTION("non-finite value") {
    // JSON has no inf literal; go through the parser's number check with a
    // crafted text (nlohmann rejects bare inf, so emulate with a huge exponent)
    write_raw(R"({"format_version":1,"n":2,"couplings":[{"i":1,"j":2,"v":1e999}]})");
    CHECK_THROWS(read_instance(path));
  }

  fs::remove(path);
}

TEST_CASE("coupling serialization keeps full precision", "[instance]") {
  SplitMix64 rng(2024);
  std::vector<double> vals;
  for (int i = 0; i < 10; ++i) vals.push_back(2.0 * rng.next_double() - 1.0);
  const LogicalProblem p(5, vals);
  const auto path = temp_file("precision.json");
  write_instance(p, path);
  const auto q = read_instance(path);
  for (int i = 0; i < 10; ++i)
    REQUIRE(q.couplings()[static_cast<std::size_t>(i)] == vals[static_cast<std::size_t>(i)]);
  fs::remove(path);
}

TEST_CASE("ground-truth sidecar round-trip and mismatch detection", "[instance]") {
  const auto p = LogicalProblem::generate(6, 0.25, 99);
  const auto truth = solve_exhaustive(p);
  const auto path = temp_file("truth.json");
  write_ground_truth(truth, p, path);
  const auto loaded = read_ground_truth(path, p);
  REQUIRE(loaded.energy == truth.energy);
  REQUIRE(loaded.p_exhaustive == truth.p_exhaustive);
  REQUIRE(loaded.states == truth.states);

  const auto other = LogicalProblem::generate(6, 0.25, 100);
  CHECK_THROWS_AS(read_ground_truth(path, other), validation_error);
  fs::remove(path);
}
