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
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "mmhybrid/channel.hpp"
#include "mmhybrid/errors.hpp"
#include "mmhybrid/metrics.hpp"
#include "mmhybrid/precoding.hpp"
#include "test_support.hpp"

namespace mmhybrid {
namespace {

ChannelRealization raw_channel(const CMatrix& m) {
  return ChannelRealization{{}, m, ArrayGeometry::ula(static_cast<int>(m.cols())),
                            ArrayGeometry::ula(static_cast<int>(m.rows()))};
}

PrecoderSolution manual_solution(const CMatrix& f_rf, const CMatrix& f_bb,
                                 std::vector<CVector> combiners) {
  PrecoderSolution sol;
  sol.f_rf = f_rf;
  sol.f_bb = f_bb;
  sol.combiners = std::move(combiners);
  sol.stage1_objective.assign(sol.combiners.size(), 0.0);
  return sol;
}

TEST(UserRate, InterferenceFree) {
  const auto h = raw_channel(CMatrix::Identity(2, 2));
  const auto sol = manual_solution(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2),
                                   {CVector::Unit(2, 0), CVector::Unit(2, 1)});
  for (double snr : {0.5, 3.0}) {
    const auto r = user_rate(h, sol, snr, 1);
    EXPECT_NEAR(r.rate, std::log2(1.0 + snr / 2.0), 1e-14);
    EXPECT_EQ(r.interference, 0.0);
    EXPECT_NEAR(r.noise, 1.0, 1e-15);
  }
}

TEST(UserRate, ZeroChannel) {
  const auto h = raw_channel(CMatrix::Zero(2, 3));
  const auto sol = manual_solution(CMatrix::Identity(3, 3), CMatrix::Identity(3, 2),
                                   {CVector::Unit(2, 0), CVector::Unit(2, 1)});
  EXPECT_EQ(user_rate(h, sol, 10.0, 0).rate, 0.0);
}

TEST(UserRate, MatchesTermByTermExpansion) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix h0 = test::random_matrix(3, 5, rng);
    const CMatrix h1 = test::random_matrix(3, 5, rng);
    const CMatrix f_rf = test::random_matrix(5, 2, rng);
    const CMatrix f_bb = test::random_matrix(2, 2, rng);
    const std::vector<CVector> w{test::random_matrix(3, 1, rng), test::random_matrix(3, 1, rng)};
    const auto sol = manual_solution(f_rf, f_bb, w);
    const double snr = uniform_real(rng, 0.1, 100.0);
    const CMatrix* hs[] = {&h0, &h1};
    for (int u = 0; u < 2; ++u) {
      double terms[2];
      for (int n = 0; n < 2; ++n) {
        Complex acc(0.0, 0.0);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 5; ++j) {
            Complex fn(0.0, 0.0);
            for (int k = 0; k < 2; ++k) fn += f_rf(j, k) * f_bb(k, n);
            acc += std::conj(w[u](i)) * (*hs[u])(i, j) * fn;
          }
        }
        terms[n] = std::norm(acc);
      }
      const double noise = w[u].squaredNorm();
      const double expected =
          std::log2(1.0 + (snr / 2.0) * terms[u] / ((snr / 2.0) * terms[1 - u] + noise));
      EXPECT_NEAR(user_rate(raw_channel(*hs[u]), sol, snr, u).rate, expected, 1e-12);
    }
  }
}

TEST(UserRate, RejectsBadArguments) {
  const auto h = raw_channel(CMatrix::Identity(2, 2));
  const auto sol = manual_solution(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2),
                                   {CVector::Unit(2, 0), CVector::Unit(2, 1)});
  EXPECT_THROW(user_rate(h, sol, 1.0, 2), std::out_of_range);
  EXPECT_THROW(user_rate(h, sol, 0.0, 0), std::invalid_argument);
}

TEST(SingleUserRate, Examples) {
  EXPECT_EQ(single_user_rate(0.0, 64, 16, 4, 1, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(single_user_rate(1.0, 1, 1, 1, 1, 1.0), 1.0);
}

TEST(SingleUserRate, MatchesSingleUserHybridMean) {
  Rng rng(2);
  const auto bs = ArrayGeometry::upa(8, 8);
  const auto ms = ArrayGeometry::upa(4, 4);
  ChannelConfig cfg;
  const double snr = 4.0;  // plotted 0 dB with U = 4
  double simulated = 0.0;
  double analytic = 0.0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const std::vector<ChannelRealization> one{sample_channel(cfg, bs, ms, rng)};
    const auto sol = hybrid_precode(one, ContinuousBeams{}, ContinuousBeams{}, PerfectFeedback{});
    simulated += user_rate(one[0], sol, snr, 0).rate;
    analytic += single_user_rate(std::norm(one[0].paths[0].gain), 64, 16, 1, 1, snr);
  }
  EXPECT_NEAR(simulated / analytic, 1.0, 0.02);
}

TEST(TheoremOne, SingleUserHasUnitFactor) {
  const auto bs = ArrayGeometry::upa(8, 8);
  const std::vector<SteeringAngle> aod{SteeringAngle::make(0.4, 0.2)};
  const std::vector<Complex> gain{Complex(0.6, 0.3)};
  const auto bound = theorem1_bound(bs, aod, gain, 16, 3.0);
  EXPECT_NEAR(bound[0], single_user_rate(std::norm(gain[0]), 64, 16, 1, 1, 3.0), 1e-12);
}

TEST(TheoremOne, OrthogonalSteeringHasUnitFactor) {
  EXPECT_NEAR(theorem1_gain_factor(virtual_direction_matrix(8).leftCols(3)), 1.0, 1e-12);
}

TEST(TheoremOne, CoincidentAnglesAreDegenerate) {
  CMatrix a(8, 2);
  a.col(0) = ula_response(8, 0.5, 0.3);
  a.col(1) = a.col(0);
  EXPECT_THROW(theorem1_gain_factor(a), DegenerateAngles);
}

TEST(TheoremOne, BelowClosedFormRate) {
  Rng rng(3);
  for (const auto& bs : {ArrayGeometry::ula(64), ArrayGeometry::upa(8, 8)}) {
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<SteeringAngle> aods;
      std::vector<Complex> gains;
      CMatrix a(64, 4);
      for (int u = 0; u < 4; ++u) {
        aods.push_back(SteeringAngle::make(uniform_real(rng, 0.0, kTwoPi),
                                           uniform_real(rng, -kPi / 2.0, kPi / 2.0)));
        gains.push_back(complex_gaussian(rng));
        a.col(u) = bs.response(aods.back());
      }
      const double snr = uniform_real(rng, 0.01, 100.0);
      const CMatrix inv = (a.adjoint() * a).inverse();
      const auto bound = theorem1_bound(bs, aods, gains, 16, snr);
      for (int u = 0; u < 4; ++u) {
        const double exact =
            std::log2(1.0 + snr / 4.0 * 64.0 * 16.0 * std::norm(gains[u]) / inv(u, u).real());
        EXPECT_LE(bound[u], exact + 1e-9);
      }
    }
  }
}

TEST(Kantorovich, IdentityIsTight) {
  const RVector b = kantorovich_diag_bound(CMatrix::Identity(3, 3));
  for (int u = 0; u < 3; ++u) EXPECT_NEAR(b(u), 1.0, 1e-15);
}

TEST(Kantorovich, DiagonalExample) {
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  p(1, 1) = 4.0;
  const RVector b = kantorovich_diag_bound(p);
  EXPECT_NEAR(b(0), 25.0 / 16.0, 1e-15);
  EXPECT_GE(b(0), 1.0);
}

TEST(Kantorovich, DominatesInverseDiagonal) {
  Rng rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 7;
    const CMatrix a = test::random_matrix(n + 2, n, rng);
    const CMatrix p = a.adjoint() * a;
    const CMatrix inv = p.inverse();
    const RVector b = kantorovich_diag_bound(p);
    for (int u = 0; u < n; ++u) EXPECT_GE(b(u) * (1.0 + 1e-12), inv(u, u).real());
  }
}

TEST(Kantorovich, RejectsNonHermitianOrIndefinite) {
  CMatrix p(2, 2);
  p << 1.0, 2.0, 0.0, 1.0;
  EXPECT_THROW(kantorovich_diag_bound(p), NotPositiveDefinite);
  p << 1.0, 0.0, 0.0, -1.0;
  EXPECT_THROW(kantorovich_diag_bound(p), NotPositiveDefinite);
}

TEST(PropThree, EmptyProductsGiveUnitFactor) {
  const std::vector<double> g{0.5, 1.0, 2.0};
  const auto b = prop3_bound(16, 4, 1, 1, 2.0, g);
  EXPECT_DOUBLE_EQ(b.factor, 1.0);
  double mean = 0.0;
  for (double x : g) mean += single_user_rate(x, 16, 4, 1, 1, 2.0);
  EXPECT_NEAR(b.value, mean / 3.0, 1e-14);
}

TEST(PropThree, TwoUsersFourAntennas) {
  EXPECT_DOUBLE_EQ(prop3_factor(4, 4, 1, 2).factor, 0.75);
}

TEST(PropThree, FactorGrowsWithArraySize) {
  double previous = 0.0;
  for (int n : {16, 36, 64}) {
    const auto p = prop3_factor(n, n, 3, 4);
    const double expected = (1 - 1.0 / n) * (1 - 2.0 / n) * (1 - 3.0 / n) *
                                std::pow(1 - 2.0 / n, 4) +
                            (1 - 3.0 / n) * (1 - 6.0 / n) * (1 - 9.0 / n) * std::pow(1.0 / n, 8);
    EXPECT_NEAR(p.factor, expected, 1e-15);
    EXPECT_GT(p.factor, previous);
    EXPECT_LT(p.factor, 1.0);
    previous = p.factor;
  }
}

TEST(PropThree, NegativeTermsAreClamped) {
  const auto p = prop3_factor(4, 16, 3, 4);
  EXPECT_TRUE(p.clamped);
  EXPECT_GE(p.factor, 0.0);
  EXPECT_FALSE(prop3_factor(64, 64, 3, 4).clamped);
}

TEST(TheoremTwo, InfiniteBitsPerfectCodebooksIsZero) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(theorem2_loss_bound(10.0, 4, 64, 16, 1.0, inf, 1.0, 1.0), 0.0, 1e-15);
  EXPECT_LT(theorem2_loss_bound(10.0, 4, 64, 16, 1.0, 300.0, 1.0, 1.0), 1e-20);
}

TEST(TheoremTwo, DirectSubstitution) {
  EXPECT_NEAR(theorem2_loss_bound(1.0, 2, 1, 1, 1.0, 1.0, 1.0, 1.0), std::log2(1.5), 1e-15);
}

TEST(TheoremTwo, MatchesFormula) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int users = 2 + trial % 5;
    const double snr = uniform_real(rng, 0.01, 100.0);
    const double bits = uniform_real(rng, 0.0, 16.0);
    const double mb = uniform_real(rng, 0.3, 1.0);
    const double mm = uniform_real(rng, 0.3, 1.0);
    const double expected = std::log2(
        (1.0 + snr / users * 64 * 16 * 0.8 * (1.0 + (users - 1) / 64.0) *
                   std::pow(2.0, -bits / (users - 1))) /
        (mb * mb * mm * mm));
    EXPECT_NEAR(theorem2_loss_bound(snr, users, 64, 16, 0.8, bits, mb, mm), expected, 1e-12);
  }
}

TEST(TheoremTwo, SingleUserHasOnlyCodebookTerm) {
  EXPECT_NEAR(theorem2_loss_bound(10.0, 1, 64, 16, 1.0, 2.0, 0.9, 0.8),
              -std::log2(0.81 * 0.64), 1e-14);
}

TEST(CorollaryTwo, SingleUserNeedsNoBits) {
  EXPECT_NEAR(corollary2_bits(10.0, 1, 64, 16, 1.0, 1.0, 1.0, 2.0), 0.0, 1e-15);
}

TEST(CorollaryTwo, LinearInSnrDb) {
  const int users = 4;
  const double b0 = corollary2_bits(0.0, users, 64, 16, 1.0, 0.95, 0.95, 2.0);
  const double b10 = corollary2_bits(10.0, users, 64, 16, 1.0, 0.95, 0.95, 2.0);
  const double b20 = corollary2_bits(20.0, users, 64, 16, 1.0, 0.95, 0.95, 2.0);
  EXPECT_NEAR((b10 - b0) / 10.0, (users - 1) / 3.0, 1e-12);
  EXPECT_NEAR((b20 - b10) / 10.0, (users - 1) / 3.0, 1e-12);
}

TEST(CorollaryTwo, UnreachableTargetThrows) {
  EXPECT_THROW(corollary2_bits(0.0, 4, 64, 16, 1.0, 0.5, 0.5, 2.0), InvalidTarget);
}

TEST(LargeDimension, SinglePathMatchesTheoremTwoNumerator) {
  for (double bits : {2.0, 6.0, 10.0}) {
    EXPECT_NEAR(largedim_loss_bound(3.0, 4, 64, 16, 1, 1.0, bits),
                theorem2_loss_bound(3.0, 4, 64, 16, 1.0, bits, 1.0, 1.0), 1e-14);
  }
}

TEST(LargeDimension, VanishesWithBits) {
  EXPECT_NEAR(largedim_loss_bound(3.0, 4, 64, 16, 3, 1.0,
                                  std::numeric_limits<double>::infinity()),
              0.0, 1e-15);
}

TEST(LargeDimension, OtherPathsBarelyMatter) {
  const double base = largedim_loss_bound(1.0, 4, 64, 16, 1, 1.0, 6.0);
  for (int paths : {3, 10}) {
    EXPECT_LT(std::abs(largedim_loss_bound(1.0, 4, 64, 16, paths, 1.0, 6.0) / base - 1.0), 1e-3);
  }
}

}  // namespace
}  // namespace mmhybrid
