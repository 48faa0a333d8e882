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

#include "mmhybrid/channel.hpp"
#include "mmhybrid/precoding.hpp"

namespace mmhybrid {

/// SINR terms of one user. Powers are already scaled by snr/U; noise is
/// ||w_u||^2.
struct UserRate {
  double rate = 0.0;  // bits/s/Hz
  double signal = 0.0;
  double interference = 0.0;
  double noise = 0.0;
};

struct RateBreakdown {
  std::vector<double> per_user_rate;
  std::vector<double> signal_power;
  std::vector<double> interference_power;
  std::vector<double> noise_power;
  double sum_rate = 0.0;

  double mean_rate() const;
};

/// Downlink rate of user `u` with equal power split and linear snr = P/sigma^2:
///   log2(1 + (snr/U)|w^H H f_u|^2 / ((snr/U) sum_{n!=u} |w^H H f_n|^2 + ||w||^2)).
UserRate user_rate(const ChannelRealization& channel, const PrecoderSolution& solution,
                   double snr, int u);

/// All users at once; `channels[u]` belongs to user u.
RateBreakdown rate_breakdown(std::span<const ChannelRealization> channels,
                             const PrecoderSolution& solution, double snr);

/// Interference-free benchmark log2(1 + snr/(U*L) * n_bs * n_ms * gain_power).
double single_user_rate(double gain_power, int n_bs, int n_ms, int users, int paths,
                        double snr);

/// G = 4 / (r + 1/r + 2), r = (sigma_max / sigma_min)^2 of the steering
/// matrix. Throws DegenerateAngles when sigma_min < 1e-10.
double theorem1_gain_factor(const CMatrix& steering);

/// Per-user lower bound on the perfect-CSI single-path hybrid rate:
/// log2(1 + (snr/U) * N_BS * n_ms * |alpha_u|^2 * G).
std::vector<double> theorem1_bound(const ArrayGeometry& bs, std::span<const SteeringAngle> aods,
                                   std::span<const Complex> gains, int n_ms, double snr);

/// Upper bounds on the diagonal of P^{-1}:
/// (1 / (4 P_uu)) * (lmax/lmin + lmin/lmax + 2).
RVector kantorovich_diag_bound(const CMatrix& p);

struct Prop3Bound {
  double value = 0.0;
  double factor = 0.0;   // probability that the virtual precoding matrix is I
  bool clamped = false;  // a product term was negative and was set to 0
};

/// Probability factor of the virtual-model bound:
/// prod_{i<U}(1 - i/N_BS) (1 - (L-1)/N_MS)^U
///   + [L>1] prod_{i<U}(1 - iL/N_BS) (1/N_MS)^{(L-1)U}.
Prop3Bound prop3_factor(int n_bs, int n_ms, int paths, int users);

/// Mean single-user rate over |gamma_1|^2 samples times the probability factor.
Prop3Bound prop3_bound(int n_bs, int n_ms, int paths, int users, double snr,
                       std::span<const double> gamma1_power);

/// Upper bound on the mean per-user rate loss from finite RF and RVQ codebooks.
/// With U = 1 the RVQ term vanishes.
double theorem2_loss_bound(double snr, int users, int n_bs, int n_ms, double alpha_bar,
                           double bb_bits, double mu_bs, double mu_ms);

/// RVQ bits that keep the loss within log2(b). Uses the printed
/// (1 - (U-1)/N_BS) factor. Throws InvalidTarget if a log argument is <= 0.
double corollary2_bits(double snr_db, int users, int n_bs, int n_ms, double alpha_bar,
                       double mu_bs, double mu_ms, double b);

/// Large-array rate loss bound for L-path channels and RVQ feedback.
double largedim_loss_bound(double snr, int users, int n_bs, int n_ms, int paths,
                           double alpha_bar, double bb_bits);

}  // namespace mmhybrid
