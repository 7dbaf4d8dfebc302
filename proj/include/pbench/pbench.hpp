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

// Umbrella header for the parity-bench library.

#pragma once

#include "pbench/common.hpp"
#include "pbench/rng.hpp"
#include "pbench/codebook.hpp"
#include "pbench/instance.hpp"
#include "pbench/parity.hpp"
#include "pbench/embedding.hpp"
#include "pbench/models.hpp"
#include "pbench/sampler.hpp"
#include "pbench/decoder.hpp"
#include "pbench/experiments.hpp"
#include "pbench/tables.hpp"
