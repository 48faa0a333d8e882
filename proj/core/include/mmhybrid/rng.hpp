// SPDX-License-Identifier: Apache-2.0
//
// mmhybrid: multi-user hybrid analog/digital precoding simulation library
// Copyright (C) 2026 The mmhybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include <cstdint>
#include <random>

#include "mmhybrid/types.hpp"

namespace mmhybrid {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

/// Independent random stream for item `index` of an experiment seeded with `seed`.
/// The stream depends only on (seed, index), so adding trials never reshuffles
/// earlier ones.
Rng make_substream(std::uint64_t seed, std::uint64_t index);

/// Circularly-symmetric complex Gaussian CN(0, variance).
Complex complex_gaussian(Rng& rng, double variance = 1.0);

double uniform_real(Rng& rng, double lo, double hi);

}  // namespace mmhybrid
