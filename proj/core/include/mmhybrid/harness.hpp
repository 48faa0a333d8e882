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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmhybrid/arrays.hpp"
#include "mmhybrid/channel.hpp"

namespace mmhybrid {

enum class SchemeId { Hybrid, BeamsteeringOnly, BlockDiagonalization, SingleUser };

std::string to_string(SchemeId scheme);
/// Inverse of to_string; throws std::invalid_argument.
SchemeId scheme_from_string(const std::string& name);

enum class SweepKind {
  None,
  BsAntennas,    // square UPA side or ULA length taken from the value
  MsAntennas,
  BothAntennas,  // N_BS = N_MS
  BbBits,        // effective-channel feedback bits
  RfBits,        // RF codebook bits, same value at the BS and the MS
};

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

struct Sweep {
  SweepKind kind = SweepKind::None;
  std::vector<int> values;
  /// Also emit analytic bound rows next to the simulated ones.
  bool bounds = false;

  bool operator==(const Sweep&) const = default;
};

/// One Monte Carlo experiment. SNR values use the plotted convention
/// SNR = P * alpha_bar / (sigma^2 * U).
struct ExperimentConfig {
  std::string name = "experiment";
  ArrayGeometry bs_geometry = ArrayGeometry::upa(8, 8);
  ArrayGeometry ms_geometry = ArrayGeometry::upa(4, 4);
  int users = 4;
  ChannelConfig channel;
  std::vector<double> snr_db_grid{0.0};
  std::vector<SchemeId> schemes{SchemeId::Hybrid, SchemeId::BeamsteeringOnly, SchemeId::SingleUser};
  /// RF codebook bits; nullopt selects continuous steering.
  std::optional<int> rf_bits_bs;
  std::optional<int> rf_bits_ms;
  /// RVQ feedback bits; nullopt selects perfect feedback.
  std::optional<int> bb_bits;
  int trials = 100;
  std::uint64_t seed = 1;
  Sweep sweep;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

struct RateRow {
  std::string scheme;
  double sweep_param = 0.0;
  double snr_db = 0.0;
  double mean_rate = 0.0;  // E[(1/U) sum_u R_u]
  double std_err = 0.0;
  int trials = 0;          // trials that contributed to the mean
  int excluded = 0;        // ill-conditioned or infeasible trials

  bool operator==(const RateRow&) const = default;
};

struct RateTable {
  std::string sweep_name = "none";
  std::vector<RateRow> rows;

  /// First row matching (scheme, snr_db, sweep_param); throws std::out_of_range.
  const RateRow& at(const std::string& scheme, double snr_db, double sweep_param = 0.0) const;
  bool operator==(const RateTable&) const = default;
};

struct RunOptions {
  /// Worker threads; 0 uses the hardware concurrency.
  int workers = 0;
};

/// snr_linear = U * 10^(snr_db/10) / alpha_bar.
double plotted_snr_to_linear(double snr_db, int users, double alpha_bar);

/// Runs every configured scheme on the same channel draws. Trial t uses the
/// random substream (seed, t); ill-conditioned trials are counted, not fatal.
RateTable run_rate_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Repeats the experiment for each array size in `sweep`. Sizes are element
/// counts; planar arrays use a square sqrt(n) x sqrt(n) layout. With bounds
/// enabled a "prop3_bound" row is added at every point.
RateTable run_antenna_sweep(const ExperimentConfig& config, const Sweep& sweep,
                            const RunOptions& options = {});

/// Repeats the experiment for each codebook size in `sweep`. Adds
/// "hybrid_unquantized" (continuous RF, perfect feedback) and the paired
/// "quantization_loss" rows; with bounds enabled also "theorem2_bound".
RateTable run_quantization_sweep(const ExperimentConfig& config, const Sweep& sweep,
                                 const RunOptions& options = {});

/// Dispatches on config.sweep.
RateTable run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Columns: scheme,sweep_param,snr_db,mean_rate,std_err,trials,excluded.
void write_csv(std::ostream& out, const RateTable& table);

/// Runs fn(0..count-1) on `workers` threads. Each index is visited once; the
/// caller stores results by index so the output order never depends on
/// scheduling.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace mmhybrid
