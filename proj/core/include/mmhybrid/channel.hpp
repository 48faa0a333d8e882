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

#include <span>
#include <vector>

#include "mmhybrid/arrays.hpp"
#include "mmhybrid/rng.hpp"

namespace mmhybrid {

struct Path {
  Complex gain;
  SteeringAngle aod;  // departure, BS side
  SteeringAngle aoa;  // arrival, MS side
};

enum class ElevationModel {
  Uniform,  // uniform on [-pi/2, pi/2]
  Fixed,    // fixed at pi/2
};

struct ChannelConfig {
  int paths = 1;
  double gain_variance = 1.0;
  ElevationModel elevation = ElevationModel::Uniform;

  /// Throws ConfigError on invalid fields.
  void validate() const;
  bool operator==(const ChannelConfig&) const = default;
};

/// One user's narrowband channel: its path list and the N_MS x N_BS matrix
///   H = sqrt(N_BS*N_MS/L) * sum_l gain_l * a_MS(aoa_l) * a_BS(aod_l)^H.
struct ChannelRealization {
  std::vector<Path> paths;
  CMatrix matrix;
  ArrayGeometry bs;
  ArrayGeometry ms;
};

/// Assembles the channel matrix from a path list.
CMatrix assemble_channel(std::span<const Path> paths, const ArrayGeometry& bs,
                         const ArrayGeometry& ms);

ChannelRealization make_channel(std::vector<Path> paths, const ArrayGeometry& bs,
                                const ArrayGeometry& ms);

/// Draws i.i.d. CN(0, gain_variance) gains and independent angles per path.
/// Draw order per path: gain, AoD azimuth, AoD elevation, AoA azimuth, AoA
/// elevation. It does not depend on the array sizes, so sweeps over array
/// dimensions see the same physical paths.
ChannelRealization sample_channel(const ChannelConfig& config, const ArrayGeometry& bs,
                                  const ArrayGeometry& ms, Rng& rng);

/// Draws a path list only, with a caller-provided gain variance.
std::vector<Path> sample_paths(int count, double gain_variance, ElevationModel elevation,
                               Rng& rng);

/// Row vector w^H * H computed directly from the path list, without forming H.
CRowVector combine_paths(std::span<const Path> paths, const ArrayGeometry& bs,
                         const ArrayGeometry& ms, const CVector& combiner);

/// Virtual (beamspace) channel A_MS^H * H * A_BS, with A the DFT direction matrices.
CMatrix to_virtual(const ChannelRealization& channel);

/// Inverse of to_virtual.
CMatrix from_virtual(const CMatrix& virtual_channel, const ArrayGeometry& bs,
                     const ArrayGeometry& ms);

struct VirtualEntry {
  Complex gain;
  int tx = 0;  // BS virtual direction (column)
  int rx = 0;  // MS virtual direction (row)

  bool operator==(const VirtualEntry&) const = default;
};

/// The `count` largest-modulus entries of a virtual channel, strongest first.
/// Equal moduli are ordered by (rx, tx) ascending.
std::vector<VirtualEntry> dominant_virtual_entries(const CMatrix& virtual_channel, int count);

}  // namespace mmhybrid
