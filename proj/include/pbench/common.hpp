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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbench {

inline constexpr const char* kVersion = "0.1.0";

/// A single spin, strictly +1 or -1.
using Spin = std::int8_t;

/// Ordered list of spins; length n in logical context, k in physical context.
using SpinConfig = std::vector<Spin>;

/// Bad arguments or bad input data (maps to CLI exit code 2).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally invalid file contents (maps to CLI exit code 2).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read or write a file (maps to CLI exit code 1).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request exceeding a configured resource cap (maps to CLI exit code 2).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

inline void check_spin_values(std::span<const Spin> z, const char* what) {
  for (Spin s : z)
    if (s != 1 && s != -1)
      throw validation_error(std::string(what) + ": spin values must be +1 or -1");
}

inline void check_length(std::span<const Spin> z, std::size_t expected, const char* what) {
  if (z.size() != expected)
    throw validation_error(std::string(what) + ": expected " + std::to_string(expected) +
                           " spins, got " + std::to_string(z.size()));
}

inline SpinConfig negated(std::span<const Spin> z) {
  SpinConfig out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = static_cast<Spin>(-z[i]);
  return out;
}

}  // namespace pbench
