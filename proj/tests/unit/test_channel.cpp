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
#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "mmhybrid/channel.hpp"
#include "mmhybrid/errors.hpp"
#include "test_support.hpp"

namespace mmhybrid {
namespace {

TEST(Channel, SinglePathIsScaledOuterProduct) {
  const auto bs = ArrayGeometry::ula(4);
  const auto ms = ArrayGeometry::ula(2);
  const Path p{Complex(1.0, 0.0), SteeringAngle::make(0.0), SteeringAngle::make(0.0)};
  const auto h = make_channel({p}, bs, ms);
  const CMatrix expected =
      std::sqrt(8.0) * test::ula_oracle(2, 0.5, 0.0) * test::ula_oracle(4, 0.5, 0.0).adjoint();
  EXPECT_LT(test::max_abs_diff(h.matrix, expected), 1e-14);
}

TEST(Channel, MatchesExplicitPathSum) {
  Rng rng(5);
  const auto bs = ArrayGeometry::upa(4, 2);
  const auto ms = ArrayGeometry::ula(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto paths = sample_paths(3, 1.5, ElevationModel::Uniform, rng);
    CMatrix expected = CMatrix::Zero(3, 8);
    for (const auto& p : paths) {
      expected += p.gain * ms.response(p.aoa) * bs.response(p.aod).adjoint();
    }
    expected *= std::sqrt(24.0 / 3.0);
    EXPECT_LT(test::max_abs_diff(assemble_channel(paths, bs, ms), expected), 1e-12);
  }
}

TEST(Channel, RebuildFromPathsReproducesMatrix) {
  Rng rng(6);
  ChannelConfig cfg;
  cfg.paths = 4;
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = sample_channel(cfg, ArrayGeometry::upa(4, 4), ArrayGeometry::ula(4), rng);
    EXPECT_LT(test::max_abs_diff(assemble_channel(h.paths, h.bs, h.ms), h.matrix), 1e-12);
  }
}

TEST(Channel, RankAtMostPathCount) {
  Rng rng(8);
  ChannelConfig cfg;
  cfg.paths = 3;
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = sample_channel(cfg, ArrayGeometry::ula(8), ArrayGeometry::ula(4), rng);
    const RVector s = Eigen::JacobiSVD<CMatrix>(h.matrix).singularValues();
    EXPECT_LT(s(3) / s(0), 1e-10);
  }
}

TEST(Channel, MeanFrobeniusPowerIsArrayGain) {
  const auto bs = ArrayGeometry::ula(8);
  const auto ms = ArrayGeometry::ula(4);
  for (int paths : {1, 3}) {
    ChannelConfig cfg;
    cfg.paths = paths;
    cfg.gain_variance = 2.0;
    Rng rng(100 + static_cast<unsigned>(paths));
    const int draws = 10000;
    double total = 0.0;
    for (int i = 0; i < draws; ++i) total += sample_channel(cfg, bs, ms, rng).matrix.squaredNorm();
    EXPECT_NEAR(total / draws / (32.0 * 2.0), 1.0, 0.05) << paths;
  }
}

TEST(Channel, GainStatistics) {
  Rng rng(9);
  const auto paths = sample_paths(20000, 0.7, ElevationModel::Uniform, rng);
  double power = 0.0;
  Complex mean(0.0, 0.0);
  for (const auto& p : paths) {
    power += std::norm(p.gain);
    mean += p.gain;
  }
  EXPECT_NEAR(power / 20000.0 / 0.7, 1.0, 0.03);
  EXPECT_LT(std::abs(mean / 20000.0), 0.03);
}

TEST(Channel, AnglesFollowElevationModel) {
  Rng rng(10);
  for (const auto& p : sample_paths(500, 1.0, ElevationModel::Fixed, rng)) {
    EXPECT_DOUBLE_EQ(p.aod.elevation, kPi / 2.0);
    EXPECT_DOUBLE_EQ(p.aoa.elevation, kPi / 2.0);
    EXPECT_GE(p.aod.azimuth, 0.0);
    EXPECT_LT(p.aod.azimuth, kTwoPi);
  }
  for (const auto& p : sample_paths(500, 1.0, ElevationModel::Uniform, rng)) {
    EXPECT_GE(p.aod.elevation, -kPi / 2.0);
    EXPECT_LE(p.aod.elevation, kPi / 2.0);
  }
}

TEST(Channel, SameSeedSameDraw) {
  ChannelConfig cfg;
  cfg.paths = 2;
  Rng a(42);
  Rng b(42);
  const auto ha = sample_channel(cfg, ArrayGeometry::ula(8), ArrayGeometry::ula(2), a);
  const auto hb = sample_channel(cfg, ArrayGeometry::ula(8), ArrayGeometry::ula(2), b);
  EXPECT_EQ(ha.matrix, hb.matrix);
}

TEST(Channel, CombinePathsEqualsCombinerTimesMatrix) {
  Rng rng(12);
  ChannelConfig cfg;
  cfg.paths = 3;
  const auto h = sample_channel(cfg, ArrayGeometry::upa(4, 4), ArrayGeometry::upa(2, 2), rng);
  const CVector w = test::random_unit_vector(4, rng);
  const CRowVector expected = w.adjoint() * h.matrix;
  EXPECT_LT(test::max_abs_diff(combine_paths(h.paths, h.bs, h.ms, w), expected), 1e-12);
}

TEST(ChannelConfig, Validation) {
  ChannelConfig cfg;
  cfg.paths = 0;
  try {
    cfg.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "paths");
  }
  cfg.paths = 1;
  cfg.gain_variance = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(VirtualChannel, RoundTrip) {
  Rng rng(13);
  ChannelConfig cfg;
  cfg.paths = 3;
  const std::pair<int, int> sizes[] = {{4, 2}, {8, 4}, {64, 16}};
  for (auto [n_bs, n_ms] : sizes) {
    const auto h = sample_channel(cfg, ArrayGeometry::ula(n_bs), ArrayGeometry::ula(n_ms), rng);
    const CMatrix back = from_virtual(to_virtual(h), h.bs, h.ms);
    EXPECT_LT(test::max_abs_diff(back, h.matrix), 1e-11) << n_bs;
  }
  const auto hp = sample_channel(cfg, ArrayGeometry::upa(4, 4), ArrayGeometry::upa(2, 2), rng);
  EXPECT_LT(test::max_abs_diff(from_virtual(to_virtual(hp), hp.bs, hp.ms), hp.matrix), 1e-11);
}

TEST(VirtualChannel, OnGridPathHasSingleEntry) {
  const auto bs = ArrayGeometry::ula(8);
  const auto ms = ArrayGeometry::ula(4);
  // pi * sin(az) = 2*pi*p/N: BS p = 1 of 8, MS q = 1 of 4.
  const Path p{Complex(0.6, -0.8), SteeringAngle::make(std::asin(0.25)),
               SteeringAngle::make(std::asin(0.5))};
  const CMatrix hv = to_virtual(make_channel({p}, bs, ms));
  int significant = 0;
  for (int r = 0; r < hv.rows(); ++r) {
    for (int c = 0; c < hv.cols(); ++c) {
      if (std::abs(hv(r, c)) > 1e-8) ++significant;
    }
  }
  EXPECT_EQ(significant, 1);
  EXPECT_NEAR(std::abs(hv(1, 1)), std::sqrt(32.0), 1e-12);
}

TEST(DominantEntries, SingleNonzero) {
  CMatrix hv = CMatrix::Zero(4, 5);
  hv(2, 3) = 5.0;
  const auto entries = dominant_virtual_entries(hv, 1);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].gain, Complex(5.0, 0.0));
  EXPECT_EQ(entries[0].tx, 3);
  EXPECT_EQ(entries[0].rx, 2);
}

TEST(DominantEntries, TiesTakeLowestIndices) {
  const CMatrix hv = 2.0 * CMatrix::Identity(3, 3);
  const auto entries = dominant_virtual_entries(hv, 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(entries[static_cast<std::size_t>(i)].tx, i);
    EXPECT_EQ(entries[static_cast<std::size_t>(i)].rx, i);
  }
}

TEST(DominantEntries, FullSortMatchesNaiveSort) {
  Rng rng(14);
  const CMatrix hv = test::random_matrix(4, 8, rng);
  const auto entries = dominant_virtual_entries(hv, 32);
  std::vector<std::pair<double, int>> naive;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 8; ++c) naive.emplace_back(std::norm(hv(r, c)), r * 8 + c);
  }
  std::stable_sort(naive.begin(), naive.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  ASSERT_EQ(entries.size(), 32u);
  for (std::size_t i = 0; i < naive.size(); ++i) {
    EXPECT_EQ(entries[i].rx, naive[i].second / 8);
    EXPECT_EQ(entries[i].tx, naive[i].second % 8);
  }
}

}  // namespace
}  // namespace mmhybrid
