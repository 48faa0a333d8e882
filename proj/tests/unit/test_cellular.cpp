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
#include <functional>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mmhybrid/cellular.hpp"
#include "mmhybrid/errors.hpp"

namespace mmhybrid {
namespace {

CellularConfig small_network() {
  CellularConfig cfg;
  cfg.region = 400.0;  // about 16 base stations
  cfg.users_per_bs = {2, 4};
  cfg.thresholds = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
  cfg.trials = 4;
  cfg.seed = 3;
  return cfg;
}

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(Cellular, DefaultLosRadiusTracksDensity) {
  CellularConfig cfg;
  EXPECT_NEAR(cfg.effective_los_radius(), 10.0, 1e-12);
  cfg.los_radius = 25.0;
  EXPECT_DOUBLE_EQ(cfg.effective_los_radius(), 25.0);
}

TEST(Cellular, Validation) {
  auto cfg = small_network();
  cfg.schemes.push_back(SchemeId::BlockDiagonalization);
  EXPECT_EQ(field_of([&] { cfg.validate(); }), "schemes");
  cfg = small_network();
  cfg.region = 100.0;
  EXPECT_EQ(field_of([&] { cfg.validate(); }), "region");
  cfg = small_network();
  cfg.users_per_bs = {65};
  EXPECT_EQ(field_of([&] { cfg.validate(); }), "users_per_bs");
  cfg = small_network();
  cfg.trials = 0;
  EXPECT_EQ(field_of([&] { cfg.validate(); }), "trials");
  cfg = small_network();
  cfg.thresholds.clear();
  EXPECT_EQ(field_of([&] { cfg.validate(); }), "thresholds");
}

TEST(Cellular, DeterministicAndWorkerInvariant) {
  const auto cfg = small_network();
  const CoverageTable a = run_coverage(cfg, {1});
  const CoverageTable b = run_coverage(cfg, {3});
  EXPECT_EQ(a, b);
  auto other = cfg;
  other.seed = 4;
  EXPECT_NE(a, run_coverage(other, {1}));
}

TEST(Cellular, CoverageIsMonotoneAndStartsAtOne) {
  const auto cfg = small_network();
  const CoverageTable t = run_coverage(cfg);
  ASSERT_EQ(t.rows.size(), cfg.schemes.size() * cfg.users_per_bs.size() * cfg.thresholds.size());
  for (SchemeId s : cfg.schemes) {
    for (int n : cfg.users_per_bs) {
      double previous = 1.0;
      for (double eta : cfg.thresholds) {
        const auto& row = t.at(to_string(s), n, eta);
        EXPECT_GT(row.samples, 0);
        EXPECT_LE(row.coverage, previous);
        EXPECT_GE(row.coverage, 0.0);
        previous = row.coverage;
      }
      EXPECT_DOUBLE_EQ(t.at(to_string(s), n, 0.0).coverage, 1.0);
    }
  }
}

TEST(Cellular, SingleUserIsIndependentOfN) {
  const CoverageTable t = run_coverage(small_network());
  for (double eta : {0.5, 2.0, 8.0}) {
    EXPECT_EQ(t.at("single_user", 2, eta).coverage, t.at("single_user", 4, eta).coverage);
  }
}

TEST(Cellular, CellsWithoutEnoughUsersAreSkipped) {
  auto cfg = small_network();
  cfg.users_per_bs = {64};
  cfg.schemes = {SchemeId::BeamsteeringOnly};
  cfg.ms_density_factor = 2.0;
  const CoverageTable t = run_coverage(cfg);
  EXPECT_EQ(t.rows.front().samples, 0);
  EXPECT_GT(t.rows.front().skipped_cells, 0);
}

TEST(Cellular, CsvLayout) {
  CoverageTable t;
  t.rows.push_back({"hybrid", 2, 1.5, 0.75, 10, 400, 3});
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(),
            "scheme,n,eta,coverage,trials,samples,skipped_cells\n"
            "hybrid,2,1.5,0.75,10,400,3\n");
}

}  // namespace
}  // namespace mmhybrid
