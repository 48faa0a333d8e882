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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmhybrid/arrays.hpp"
#include "mmhybrid/harness.hpp"

namespace mmhybrid {

/// Downlink network with Poisson base stations and users on a torus.
///
/// Links shorter than the LOS radius use the LOS path-loss exponent, all
/// others the NLOS one. Every link is a single path with gain variance
/// max(r, 1)^-exponent. Users attach to the BS with the smallest path loss and
/// each BS serves n randomly chosen users of its own.
struct CellularConfig {
  double bs_density = 1e-4;       // per m^2
  double ms_density_factor = 30;  // MS density / BS density
  double region = 600.0;          // side of the square, m
  double los_exponent = 2.0;
  double nlos_exponent = 4.0;
  /// LOS ball radius in m; nullopt uses 0.1 / sqrt(bs_density).
  std::optional<double> los_radius;
  /// Transmit power over noise power at 1 m, in dB.
  double tx_snr_db = 60.0;
  ArrayGeometry bs_geometry = ArrayGeometry::upa(8, 8);
  ArrayGeometry ms_geometry = ArrayGeometry::upa(4, 4);
  std::vector<int> users_per_bs{2, 3, 4, 5};
  std::vector<double> thresholds{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0};  // bits/s/Hz
  std::vector<SchemeId> schemes{SchemeId::Hybrid, SchemeId::BeamsteeringOnly,
                                SchemeId::SingleUser};
  int trials = 100;
  std::uint64_t seed = 1;

  double effective_los_radius() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const CellularConfig&) const = default;
};

struct CoverageRow {
  std::string scheme;
  int n = 0;
  double eta = 0.0;
  double coverage = 0.0;  // P(R_u >= eta)
  int trials = 0;
  long samples = 0;        // served users pooled over trials
  long skipped_cells = 0;  // cells with fewer than n users or singular ZF

  bool operator==(const CoverageRow&) const = default;
};

struct CoverageTable {
  std::vector<CoverageRow> rows;

  const CoverageRow& at(const std::string& scheme, int n, double eta) const;
  bool operator==(const CoverageTable&) const = default;
};

/// Single-user-per-cell serves the first selected user of each cell at full
/// power and does not depend on n; it is reported for every n.
CoverageTable run_coverage(const CellularConfig& config, const RunOptions& options = {});

/// Columns: scheme,n,eta,coverage,trials,samples,skipped_cells.
void write_csv(std::ostream& out, const CoverageTable& table);

}  // namespace mmhybrid
