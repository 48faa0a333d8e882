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
#include <cmath>

#include <gtest/gtest.h>

#include "mmhybrid/arrays.hpp"
#include "mmhybrid/errors.hpp"
#include "test_support.hpp"

namespace mmhybrid {
namespace {

TEST(UlaResponse, SingleElementIsOne) {
  for (double az : {0.0, 0.3, 2.0, -1.0}) {
    const CVector a = ula_response(1, 0.5, az);
    ASSERT_EQ(a.size(), 1);
    EXPECT_NEAR(std::abs(a(0) - Complex(1.0, 0.0)), 0.0, 1e-15);
  }
}

TEST(UlaResponse, BroadsideIsFlat) {
  const CVector a = ula_response(4, 0.5, 0.0);
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(std::abs(a(m) - Complex(0.5, 0.0)), 0.0, 1e-15);
}

TEST(UlaResponse, EndfireTwoElementsAlternates) {
  const CVector a = ula_response(2, 0.5, kPi / 2.0);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(a(0) - Complex(s, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(1) - Complex(-s, 0.0)), 0.0, 1e-15);
}

TEST(UlaResponse, MatchesElementwiseOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const double az = uniform_real(rng, 0.0, kTwoPi);
    const double d = uniform_real(rng, 0.2, 1.0);
    EXPECT_LT(test::max_abs_diff(ula_response(n, d, az), test::ula_oracle(n, d, az)), 1e-12);
  }
}

TEST(UlaResponse, EqualSineGivesEqualResponse) {
  for (double az : {0.1, 0.9, 1.4}) {
    EXPECT_LT(test::max_abs_diff(ula_response(16, 0.5, az), ula_response(16, 0.5, kPi - az)),
              1e-12);
  }
}

TEST(UpaResponse, SingleElementIsOne) {
  const auto g = ArrayGeometry::upa(1, 1);
  const CVector a = g.response(SteeringAngle::make(1.2, 0.4));
  ASSERT_EQ(a.size(), 1);
  EXPECT_NEAR(std::abs(a(0) - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(UpaResponse, HorizonBroadsideIsFlat) {
  const CVector a = ArrayGeometry::upa(2, 2).response(SteeringAngle::make(0.0, kPi / 2.0));
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(std::abs(a(m) - Complex(0.5, 0.0)), 0.0, 1e-15);
}

TEST(UpaResponse, MatchesDoubleLoopPhases) {
  const auto g = ArrayGeometry::upa(4, 4);
  const double az = 0.7;
  const double el = 0.3;
  const CVector a = g.response(SteeringAngle::make(az, el));
  for (int h = 0; h < 4; ++h) {
    for (int v = 0; v < 4; ++v) {
      const double phase = kPi * (h * std::sin(az) * std::sin(el) + v * std::cos(el));
      const Complex expected = std::polar(0.25, phase);
      EXPECT_NEAR(std::abs(a(h * 4 + v) - expected), 0.0, 1e-14) << h << "," << v;
    }
  }
}

TEST(ArrayResponse, UnitNormAndConstantModulus) {
  Rng rng(11);
  const ArrayGeometry geometries[] = {ArrayGeometry::ula(1), ArrayGeometry::ula(7),
                                      ArrayGeometry::ula(64), ArrayGeometry::upa(3, 5),
                                      ArrayGeometry::upa(8, 8)};
  for (const auto& g : geometries) {
    for (int i = 0; i < 100; ++i) {
      const auto angle =
          SteeringAngle::make(uniform_real(rng, 0.0, kTwoPi), uniform_real(rng, -1.5, 1.5));
      const CVector a = g.response(angle);
      ASSERT_EQ(a.size(), g.size());
      EXPECT_NEAR(a.norm(), 1.0, 1e-12);
      const double modulus = 1.0 / std::sqrt(static_cast<double>(g.size()));
      for (int m = 0; m < a.size(); ++m) EXPECT_NEAR(std::abs(a(m)), modulus, 1e-12);
    }
  }
}

TEST(ArrayResponse, UpaIsKroneckerOfFactors) {
  const auto g = ArrayGeometry::upa(4, 2);
  const auto angle = SteeringAngle::make(2.1, -0.6);
  const auto [fh, fv] = g.spatial_frequencies(angle);
  const CMatrix expected = kronecker(response_at_frequency(4, fh), response_at_frequency(2, fv));
  EXPECT_LT(test::max_abs_diff(g.response(angle), expected), 1e-14);
}

TEST(ArrayGeometry, RejectsInvalidSizes) {
  EXPECT_THROW(ArrayGeometry::ula(0), std::invalid_argument);
  EXPECT_THROW(ArrayGeometry::upa(0, 3), std::invalid_argument);
  EXPECT_THROW(ArrayGeometry::ula(4, 0.0), std::invalid_argument);
}

TEST(WrapAzimuth, MapsIntoPeriod) {
  EXPECT_NEAR(wrap_azimuth(-kPi / 2.0), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(wrap_azimuth(5.0 * kPi), kPi, 1e-12);
  EXPECT_GE(wrap_azimuth(kTwoPi), 0.0);
  EXPECT_LT(wrap_azimuth(kTwoPi), kTwoPi);
}

TEST(VirtualDirections, SizeOneIsOne) {
  const CMatrix a = virtual_direction_matrix(1);
  ASSERT_EQ(a.rows(), 1);
  EXPECT_NEAR(std::abs(a(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(VirtualDirections, Unitary) {
  for (int n : {1, 2, 4, 16, 64}) {
    const CMatrix a = virtual_direction_matrix(n);
    const CMatrix gram = a.adjoint() * a;
    EXPECT_LT((gram - CMatrix::Identity(n, n)).norm(), 1e-12) << n;
  }
}

TEST(VirtualDirections, ColumnsAreDftEntries) {
  const int n = 8;
  const CMatrix a = virtual_direction_matrix(n);
  for (int p = 0; p < n; ++p) {
    for (int m = 0; m < n; ++m) {
      const Complex expected = std::polar(1.0 / std::sqrt(8.0), kTwoPi * p * m / n);
      EXPECT_NEAR(std::abs(a(m, p) - expected), 0.0, 1e-14);
    }
  }
}

TEST(VirtualDirections, PlanarIsUnitaryKronecker) {
  const auto g = ArrayGeometry::upa(4, 2);
  const CMatrix a = virtual_direction_matrix(g);
  ASSERT_EQ(a.rows(), 8);
  EXPECT_LT((a.adjoint() * a - CMatrix::Identity(8, 8)).norm(), 1e-12);
  EXPECT_LT(test::max_abs_diff(a, kronecker(virtual_direction_matrix(4),
                                            virtual_direction_matrix(2))),
            1e-15);
}

TEST(Kronecker, MatchesBlockDefinition) {
  Rng rng(3);
  const CMatrix a = test::random_matrix(2, 3, rng);
  const CMatrix b = test::random_matrix(3, 2, rng);
  const CMatrix k = kronecker(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_LT(test::max_abs_diff(k.block(i * 3, j * 2, 3, 2), a(i, j) * b), 1e-15);
    }
  }
}

}  // namespace
}  // namespace mmhybrid
