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

#include "pbench/rng.hpp"

using namespace pbench;

TEST_CASE("splitmix64 matches the reference sequence", "[rng]") {
  // reference outputs of the published splitmix64 algorithm
  SplitMix64 a(0);
  CHECK(a.next() == 0xE220A8397B1DCDAFULL);
  CHECK(a.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(a.next() == 0x06C45D188009454FULL);

  SplitMix64 b(1234567);
  CHECK(b.next() == 0x599ED017FB08FC85ULL);
  CHECK(b.next() == 0x2C73F08458540FA5ULL);

  SplitMix64 c(0xDEADBEEFULL);
  CHECK(c.next() == 0x4ADFB90F68C9EB9BULL);
  CHECK(c.next() == 0xDE586A3141A10922ULL);
}

TEST_CASE("derive_seed equals the indexed splitmix64 output", "[rng]") {
  const std::uint64_t master = 42;
  SplitMix64 stream(master);
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(derive_seed(master, i) == stream.next());
}

TEST_CASE("next_double stays in [0,1)", "[rng]") {
  SplitMix64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("random_config is deterministic and +/-1 valued", "[rng]") {
  SplitMix64 a(99), b(99);
  const SpinConfig x = random_config(91, a);
  const SpinConfig y = random_config(91, b);
  REQUIRE(x == y);
  for (Spin s : x) REQUIRE((s == 1 || s == -1));

  SplitMix64 c(100);
  REQUIRE(random_config(91, c) != x);
}
