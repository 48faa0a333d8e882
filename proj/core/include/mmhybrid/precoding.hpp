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
#include <variant>
#include <vector>

#include "mmhybrid/channel.hpp"
#include "mmhybrid/codebooks.hpp"

namespace mmhybrid {

enum class Scheme { Hybrid, BeamsteeringOnly, BlockDiagonalization };

/// Reject zero-forcing when cond(H_hat * H_hat^H) exceeds this value.
inline constexpr double kMaxGramCondition = 1e12;

/// Output of one precoding scheme.
///
/// For the hybrid schemes f_rf is N_BS x U (codebook columns) and f_bb is
/// U x U. Block diagonalization is all-digital: f_rf is the N_BS x N_BS
/// identity placeholder and f_bb holds the N_BS x U digital precoder.
struct PrecoderSolution {
  Scheme scheme = Scheme::Hybrid;
  CMatrix f_rf;
  CMatrix f_bb;
  std::vector<CVector> combiners;
  std::vector<double> stage1_objective;
  /// cond(H_hat * H_hat^H) of the zero-forcing input; 1 when no ZF was run.
  double gram_condition = 1.0;

  int users() const noexcept { return static_cast<int>(combiners.size()); }
  CMatrix effective_precoder() const { return f_rf * f_bb; }
};

/// Infinite-resolution steering: the candidate beams are the array responses
/// along the channel's own path directions.
struct ContinuousBeams {};

/// Where stage-1 RF beams come from.
using BeamSource = std::variant<ContinuousBeams, Codebook>;

struct PerfectFeedback {};

/// Effective-channel feedback: exact, or quantized with a codebook.
using Feedback = std::variant<PerfectFeedback, Codebook>;

struct Stage1Selection {
  CVector bs_beam;  // v*
  CVector ms_beam;  // g*
  int bs_index = 0;
  int ms_index = 0;
  double objective = 0.0;  // |g*^H H v*|
};

/// Exhaustive max of |g^H H v| over candidate columns. Ties (within
/// kTieTolerance) go to the lowest (ms index, bs index) pair.
Stage1Selection stage1_search(const CMatrix& h, const CMatrix& bs_candidates,
                              const CMatrix& ms_candidates);

Stage1Selection stage1_select(const ChannelRealization& h, const Codebook& f_codebook,
                              const Codebook& w_codebook);

Stage1Selection stage1_select(const ChannelRealization& h, const BeamSource& bs_beams,
                              const BeamSource& ms_beams);

/// w^H H F_RF as a 1 x U row.
CRowVector effective_channel(const CVector& w, const CMatrix& h, const CMatrix& f_rf);

/// F_BB = H_hat^H (H_hat H_hat^H)^{-1}, then every column scaled so that
/// ||F_RF f_u|| = 1. Throws IllConditioned above `max_condition`.
CMatrix zf_baseband(const CMatrix& h_hat, const CMatrix& f_rf,
                    double max_condition = kMaxGramCondition);

/// cond(H_hat * H_hat^H) = (sigma_max / sigma_min)^2 after scaling every row
/// of H_hat to unit norm. Quantized feedback rows are unit norm already.
double gram_condition_number(const CMatrix& h_hat);

/// Result of the RF stage shared by the hybrid and analog-only schemes.
struct RfStage {
  CMatrix f_rf;                     // N_BS x U
  std::vector<CVector> combiners;   // w_u
  std::vector<double> objective;    // stage-1 objective per user
  CMatrix effective;                // U x U, row u = w_u^H H_u F_RF
};

RfStage design_rf_stage(std::span<const ChannelRealization> channels, const BeamSource& bs_beams,
                        const BeamSource& ms_beams);

/// Second stage: feedback of the effective channels and zero-forcing baseband.
PrecoderSolution hybrid_from_rf(const RfStage& rf, const Feedback& feedback);

/// Analog-only precoding: diagonal baseband scaled for unit column power.
PrecoderSolution beamsteering_from_rf(const RfStage& rf);

/// Two-stage multi-user hybrid precoding.
PrecoderSolution hybrid_precode(std::span<const ChannelRealization> channels,
                                const BeamSource& f_beams, const BeamSource& w_beams,
                                const Feedback& feedback);

PrecoderSolution beamsteering_only(std::span<const ChannelRealization> channels,
                                   const BeamSource& f_beams, const BeamSource& w_beams);

/// Unconstrained digital block diagonalization with one dominant eigenmode per
/// user. Throws Infeasible when a user has no interference-free subspace.
PrecoderSolution block_diagonalization(std::span<const ChannelRealization> channels);

}  // namespace mmhybrid
