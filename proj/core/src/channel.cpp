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
#include "mmhybrid/channel.hpp"

#include <algorithm>
#include <cmath>

#include "mmhybrid/errors.hpp"

namespace mmhybrid {

void ChannelConfig::validate() const {
  if (paths < 1) throw ConfigError("paths", "must be >= 1");
  if (!(gain_variance > 0.0)) throw ConfigError("gain_variance", "must be > 0");
}

CMatrix assemble_channel(std::span<const Path> paths, const ArrayGeometry& bs,
                         const ArrayGeometry& ms) {
  CMatrix h = CMatrix::Zero(ms.size(), bs.size());
  if (paths.empty()) return h;
  const double scale =
      std::sqrt(static_cast<double>(bs.size()) * ms.size() / static_cast<double>(paths.size()));
  for (const Path& path : paths) {
    h.noalias() += (scale * path.gain) * ms.response(path.aoa) * bs.response(path.aod).adjoint();
  }
  return h;
}

ChannelRealization make_channel(std::vector<Path> paths, const ArrayGeometry& bs,
                                const ArrayGeometry& ms) {
  CMatrix h = assemble_channel(paths, bs, ms);
  return ChannelRealization{std::move(paths), std::move(h), bs, ms};
}

std::vector<Path> sample_paths(int count, double gain_variance, ElevationModel elevation,
                               Rng& rng) {
  auto draw_elevation = [&]() {
    // Drawn in both modes so the stream layout does not depend on the model.
    const double el = uniform_real(rng, -kPi / 2.0, kPi / 2.0);
    return elevation == ElevationModel::Uniform ? el : kPi / 2.0;
  };
  std::vector<Path> paths;
  paths.reserve(count);
  for (int l = 0; l < count; ++l) {
    Path p;
    p.gain = complex_gaussian(rng, gain_variance);
    const double aod_az = uniform_real(rng, 0.0, kTwoPi);
    const double aod_el = draw_elevation();
    const double aoa_az = uniform_real(rng, 0.0, kTwoPi);
    const double aoa_el = draw_elevation();
    p.aod = SteeringAngle::make(aod_az, aod_el);
    p.aoa = SteeringAngle::make(aoa_az, aoa_el);
    paths.push_back(p);
  }
  return paths;
}

ChannelRealization sample_channel(const ChannelConfig& config, const ArrayGeometry& bs,
                                  const ArrayGeometry& ms, Rng& rng) {
  config.validate();
  return make_channel(sample_paths(config.paths, config.gain_variance, config.elevation, rng),
                      bs, ms);
}

CRowVector combine_paths(std::span<const Path> paths, const ArrayGeometry& bs,
                         const ArrayGeometry& ms, const CVector& combiner) {
  CRowVector row = CRowVector::Zero(bs.size());
  if (paths.empty()) return row;
  const double scale =
      std::sqrt(static_cast<double>(bs.size()) * ms.size() / static_cast<double>(paths.size()));
  for (const Path& path : paths) {
    const Complex rx_gain = combiner.dot(ms.response(path.aoa));  // w^H a_MS
    row.noalias() += (scale * path.gain * rx_gain) * bs.response(path.aod).adjoint();
  }
  return row;
}

CMatrix to_virtual(const ChannelRealization& channel) {
  const CMatrix a_bs = virtual_direction_matrix(channel.bs);
  const CMatrix a_ms = virtual_direction_matrix(channel.ms);
  return a_ms.adjoint() * channel.matrix * a_bs;
}

CMatrix from_virtual(const CMatrix& virtual_channel, const ArrayGeometry& bs,
                     const ArrayGeometry& ms) {
  return virtual_direction_matrix(ms) * virtual_channel * virtual_direction_matrix(bs).adjoint();
}

std::vector<VirtualEntry> dominant_virtual_entries(const CMatrix& virtual_channel, int count) {
  if (count < 1) throw std::invalid_argument("dominant_virtual_entries: count must be >= 1");
  std::vector<VirtualEntry> entries;
  entries.reserve(static_cast<std::size_t>(virtual_channel.size()));
  for (Eigen::Index rx = 0; rx < virtual_channel.rows(); ++rx) {
    for (Eigen::Index tx = 0; tx < virtual_channel.cols(); ++tx) {
      entries.push_back({virtual_channel(rx, tx), static_cast<int>(tx), static_cast<int>(rx)});
    }
  }
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(count), entries.size());
  auto stronger = [](const VirtualEntry& a, const VirtualEntry& b) {
    const double na = std::norm(a.gain);
    const double nb = std::norm(b.gain);
    if (na != nb) return na > nb;
    if (a.rx != b.rx) return a.rx < b.rx;
    return a.tx < b.tx;
  };
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep),
                    entries.end(), stronger);
  entries.resize(keep);
  return entries;
}

}  // namespace mmhybrid
