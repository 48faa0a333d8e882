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
#include "mmhybrid/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mmhybrid/errors.hpp"

namespace mmhybrid {

namespace {

constexpr double kMinSigma = 1e-10;

void require_snr(double snr) {
  if (!(snr > 0.0)) throw std::invalid_argument("snr must be > 0");
}

// 2^(-bits/(U-1)), or 0 when there is no inter-user term.
double rvq_factor(int users, double bb_bits) {
  if (users <= 1) return 0.0;
  return std::exp2(-bb_bits / (users - 1));
}

}  // namespace

double RateBreakdown::mean_rate() const {
  if (per_user_rate.empty()) return 0.0;
  return sum_rate / static_cast<double>(per_user_rate.size());
}

UserRate user_rate(const ChannelRealization& channel, const PrecoderSolution& solution,
                   double snr, int u) {
  require_snr(snr);
  const int users = solution.users();
  if (u < 0 || u >= users) throw std::out_of_range("user_rate: user index out of range");
  const CVector& w = solution.combiners[static_cast<std::size_t>(u)];
  const CRowVector gains = w.adjoint() * channel.matrix * solution.effective_precoder();
  const double scale = snr / users;

  UserRate r;
  r.signal = scale * std::norm(gains[u]);
  for (int n = 0; n < users; ++n) {
    if (n != u) r.interference += scale * std::norm(gains[n]);
  }
  r.noise = w.squaredNorm();
  const double denom = r.interference + r.noise;
  r.rate = denom > 0.0 ? std::log2(1.0 + r.signal / denom) : 0.0;
  return r;
}

RateBreakdown rate_breakdown(std::span<const ChannelRealization> channels,
                             const PrecoderSolution& solution, double snr) {
  if (static_cast<int>(channels.size()) != solution.users()) {
    throw std::invalid_argument("rate_breakdown: one channel per user required");
  }
  RateBreakdown out;
  for (int u = 0; u < solution.users(); ++u) {
    const UserRate r = user_rate(channels[static_cast<std::size_t>(u)], solution, snr, u);
    out.per_user_rate.push_back(r.rate);
    out.signal_power.push_back(r.signal);
    out.interference_power.push_back(r.interference);
    out.noise_power.push_back(r.noise);
    out.sum_rate += r.rate;
  }
  return out;
}

double single_user_rate(double gain_power, int n_bs, int n_ms, int users, int paths,
                        double snr) {
  if (n_bs < 1 || n_ms < 1 || users < 1 || paths < 1) {
    throw std::invalid_argument("single_user_rate: dimensions must be positive");
  }
  return std::log2(1.0 + snr / (static_cast<double>(users) * paths) * n_bs * n_ms * gain_power);
}

double theorem1_gain_factor(const CMatrix& steering) {
  const Eigen::JacobiSVD<CMatrix> svd(steering);
  const RVector& s = svd.singularValues();
  const double smin = s[s.size() - 1];
  if (smin < kMinSigma) throw DegenerateAngles(smin);
  const double r = (s[0] * s[0]) / (smin * smin);
  return 4.0 / (r + 1.0 / r + 2.0);
}

std::vector<double> theorem1_bound(const ArrayGeometry& bs, std::span<const SteeringAngle> aods,
                                   std::span<const Complex> gains, int n_ms, double snr) {
  if (aods.empty() || aods.size() != gains.size()) {
    throw std::invalid_argument("theorem1_bound: one gain per departure angle required");
  }
  const auto users = static_cast<Eigen::Index>(aods.size());
  CMatrix a(bs.size(), users);
  for (Eigen::Index u = 0; u < users; ++u) a.col(u) = bs.response(aods[u]);
  const double g = theorem1_gain_factor(a);
  std::vector<double> out;
  out.reserve(aods.size());
  for (const Complex& alpha : gains) {
    out.push_back(std::log2(1.0 + snr / users * bs.size() * n_ms * std::norm(alpha) * g));
  }
  return out;
}

RVector kantorovich_diag_bound(const CMatrix& p) {
  if (p.rows() != p.cols() || p.rows() == 0) {
    throw std::invalid_argument("kantorovich_diag_bound: square matrix required");
  }
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NotPositiveDefinite("kantorovich_diag_bound: matrix is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(p, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) throw NotPositiveDefinite("kantorovich_diag_bound: eigenvalue <= 0");
  const double kappa = lmax / lmin + lmin / lmax + 2.0;
  RVector out(p.rows());
  for (Eigen::Index u = 0; u < p.rows(); ++u) out[u] = kappa / (4.0 * p(u, u).real());
  return out;
}

Prop3Bound prop3_factor(int n_bs, int n_ms, int paths, int users) {
  if (n_bs < 1 || n_ms < 1 || paths < 1 || users < 1) {
    throw std::invalid_argument("prop3_factor: dimensions must be positive");
  }
  Prop3Bound out;
  auto clamp = [&](double term) {
    if (term < 0.0) {
      out.clamped = true;
      return 0.0;
    }
    return term;
  };
  double distinct = 1.0;
  double distinct_clusters = 1.0;
  for (int i = 1; i < users; ++i) {
    distinct *= clamp(1.0 - static_cast<double>(i) / n_bs);
    distinct_clusters *= clamp(1.0 - static_cast<double>(i) * paths / n_bs);
  }
  const double aoa_apart = clamp(1.0 - static_cast<double>(paths - 1) / n_ms);
  out.factor = distinct * std::pow(aoa_apart, users);
  if (paths > 1) {
    out.factor += distinct_clusters * std::pow(1.0 / n_ms, (paths - 1) * users);
  }
  return out;
}

Prop3Bound prop3_bound(int n_bs, int n_ms, int paths, int users, double snr,
                       std::span<const double> gamma1_power) {
  if (gamma1_power.empty()) throw std::invalid_argument("prop3_bound: no gain samples");
  Prop3Bound out = prop3_factor(n_bs, n_ms, paths, users);
  double mean = 0.0;
  for (double g : gamma1_power) mean += single_user_rate(g, n_bs, n_ms, users, paths, snr);
  mean /= static_cast<double>(gamma1_power.size());
  out.value = mean * out.factor;
  return out;
}

double theorem2_loss_bound(double snr, int users, int n_bs, int n_ms, double alpha_bar,
                           double bb_bits, double mu_bs, double mu_ms) {
  if (!(mu_bs > 0.0 && mu_bs <= 1.0 && mu_ms > 0.0 && mu_ms <= 1.0)) {
    throw std::invalid_argument("theorem2_loss_bound: mu values must lie in (0, 1]");
  }
  if (bb_bits < 0.0) throw std::invalid_argument("theorem2_loss_bound: bits must be >= 0");
  const double num = 1.0 + snr / users * n_bs * n_ms * alpha_bar *
                               (1.0 + static_cast<double>(users - 1) / n_bs) *
                               rvq_factor(users, bb_bits);
  return std::log2(num / (mu_bs * mu_bs * mu_ms * mu_ms));
}

double corollary2_bits(double snr_db, int users, int n_bs, int n_ms, double alpha_bar,
                       double mu_bs, double mu_ms, double b) {
  const double target = mu_bs * mu_bs * mu_ms * mu_ms * b - 1.0;
  if (!(target > 0.0)) throw InvalidTarget("corollary2_bits: mu_bs^2 * mu_ms^2 * b must exceed 1");
  const double array_term = static_cast<double>(n_bs) * n_ms / users * alpha_bar *
                            (1.0 - static_cast<double>(users - 1) / n_bs);
  if (!(array_term > 0.0)) throw InvalidTarget("corollary2_bits: array term must be positive");
  const double k = users - 1;
  return k / 3.0 * snr_db + k * std::log2(array_term) - k * std::log2(target);
}

double largedim_loss_bound(double snr, int users, int n_bs, int n_ms, int paths,
                           double alpha_bar, double bb_bits) {
  if (bb_bits < 0.0) throw std::invalid_argument("largedim_loss_bound: bits must be >= 0");
  const double nn = static_cast<double>(n_bs) * n_ms;
  const double spread = 1.0 + static_cast<double>(users - 1) / n_bs * (1.0 + (paths - 1) / nn);
  return std::log2(1.0 + snr / users * alpha_bar * nn * spread * rvq_factor(users, bb_bits));
}

}  // namespace mmhybrid
