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
#include "mmhybrid/precoding.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mmhybrid/errors.hpp"

namespace mmhybrid {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Candidate matrix for one side of the link.
CMatrix candidates(const ChannelRealization& h, const BeamSource& source, bool bs_side) {
  return std::visit(
      Overloaded{
          [&](const ContinuousBeams&) {
            const ArrayGeometry& geometry = bs_side ? h.bs : h.ms;
            CMatrix beams(geometry.size(), static_cast<Eigen::Index>(h.paths.size()));
            for (std::size_t l = 0; l < h.paths.size(); ++l) {
              const Path& p = h.paths[l];
              beams.col(static_cast<Eigen::Index>(l)) = geometry.response(bs_side ? p.aod : p.aoa);
            }
            return beams;
          },
          [](const Codebook& codebook) { return codebook.vectors(); },
      },
      source);
}

void require_users(std::span<const ChannelRealization> channels) {
  if (channels.empty()) throw std::invalid_argument("precoding needs at least one user");
  for (const auto& ch : channels) {
    if (ch.matrix.rows() != channels.front().matrix.rows() ||
        ch.matrix.cols() != channels.front().matrix.cols()) {
      throw std::invalid_argument("all user channels must have the same dimensions");
    }
  }
}

}  // namespace

Stage1Selection stage1_search(const CMatrix& h, const CMatrix& bs_candidates,
                              const CMatrix& ms_candidates) {
  if (bs_candidates.cols() == 0 || ms_candidates.cols() == 0) {
    throw std::invalid_argument("stage1: empty codebook");
  }
  if (bs_candidates.rows() != h.cols() || ms_candidates.rows() != h.rows()) {
    throw std::invalid_argument("stage1: codeword length does not match channel dimensions");
  }
  const Eigen::MatrixXd gain = (ms_candidates.adjoint() * h * bs_candidates).cwiseAbs();
  const double floor = gain.maxCoeff() * (1.0 - kTieTolerance);
  Stage1Selection best;
  bool found = false;
  for (Eigen::Index w = 0; w < gain.rows() && !found; ++w) {
    for (Eigen::Index f = 0; f < gain.cols() && !found; ++f) {
      if (gain(w, f) >= floor) {
        best.ms_index = static_cast<int>(w);
        best.bs_index = static_cast<int>(f);
        best.objective = gain(w, f);
        found = true;
      }
    }
  }
  best.bs_beam = bs_candidates.col(best.bs_index);
  best.ms_beam = ms_candidates.col(best.ms_index);
  return best;
}

Stage1Selection stage1_select(const ChannelRealization& h, const Codebook& f_codebook,
                              const Codebook& w_codebook) {
  return stage1_search(h.matrix, f_codebook.vectors(), w_codebook.vectors());
}

Stage1Selection stage1_select(const ChannelRealization& h, const BeamSource& bs_beams,
                              const BeamSource& ms_beams) {
  return stage1_search(h.matrix, candidates(h, bs_beams, true), candidates(h, ms_beams, false));
}

CRowVector effective_channel(const CVector& w, const CMatrix& h, const CMatrix& f_rf) {
  return w.adjoint() * h * f_rf;
}

double gram_condition_number(const CMatrix& h_hat) {
  // Zero-forcing output does not change when rows are rescaled, so the
  // conditioning is judged on unit-norm rows.
  CMatrix rows = h_hat;
  for (Eigen::Index u = 0; u < rows.rows(); ++u) {
    const double norm = rows.row(u).norm();
    if (!(norm > 0.0)) return std::numeric_limits<double>::infinity();
    rows.row(u) /= norm;
  }
  const Eigen::JacobiSVD<CMatrix> svd(rows);
  const RVector& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s[s.size() - 1];
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  const double ratio = s[0] / smin;
  return ratio * ratio;
}

CMatrix zf_baseband(const CMatrix& h_hat, const CMatrix& f_rf, double max_condition) {
  if (h_hat.rows() != h_hat.cols()) throw std::invalid_argument("zf_baseband: H_hat must be square");
  if (f_rf.cols() != h_hat.cols()) {
    throw std::invalid_argument("zf_baseband: F_RF columns must match the number of users");
  }
  const double cond = gram_condition_number(h_hat);
  if (!(cond <= max_condition)) throw IllConditioned(cond);

  // For full row rank H_hat the pseudo-inverse equals H^H (H H^H)^{-1}; the
  // orthogonal decomposition avoids squaring the condition number.
  CMatrix f_bb = h_hat.completeOrthogonalDecomposition().pseudoInverse();
  for (Eigen::Index u = 0; u < f_bb.cols(); ++u) {
    const double power = (f_rf * f_bb.col(u)).norm();
    if (!(power > 0.0)) throw IllConditioned(std::numeric_limits<double>::infinity());
    f_bb.col(u) /= power;
  }
  return f_bb;
}

RfStage design_rf_stage(std::span<const ChannelRealization> channels, const BeamSource& bs_beams,
                        const BeamSource& ms_beams) {
  require_users(channels);
  const auto users = static_cast<Eigen::Index>(channels.size());
  RfStage rf;
  rf.f_rf.resize(channels.front().matrix.cols(), users);
  rf.combiners.reserve(channels.size());
  rf.objective.reserve(channels.size());
  for (Eigen::Index u = 0; u < users; ++u) {
    const Stage1Selection sel = stage1_select(channels[u], bs_beams, ms_beams);
    rf.f_rf.col(u) = sel.bs_beam;
    rf.combiners.push_back(sel.ms_beam);
    rf.objective.push_back(sel.objective);
  }
  rf.effective.resize(users, users);
  for (Eigen::Index u = 0; u < users; ++u) {
    rf.effective.row(u) = effective_channel(rf.combiners[u], channels[u].matrix, rf.f_rf);
  }
  return rf;
}

PrecoderSolution hybrid_from_rf(const RfStage& rf, const Feedback& feedback) {
  const Eigen::Index users = rf.effective.rows();
  CMatrix h_hat = std::visit(
      Overloaded{
          [&](const PerfectFeedback&) -> CMatrix { return rf.effective; },
          [&](const Codebook& codebook) -> CMatrix {
            if (codebook.dimension() != users) {
              throw std::invalid_argument("feedback codebook dimension must equal the user count");
            }
            CMatrix quantized(users, users);
            for (Eigen::Index u = 0; u < users; ++u) {
              CVector target = rf.effective.row(u).transpose();
              const double norm = target.norm();
              if (norm > 0.0) target /= norm;
              quantized.row(u) = quantize(codebook, target).codeword.transpose();
            }
            return quantized;
          },
      },
      feedback);

  PrecoderSolution sol;
  sol.scheme = Scheme::Hybrid;
  sol.f_rf = rf.f_rf;
  sol.combiners = rf.combiners;
  sol.stage1_objective = rf.objective;
  sol.gram_condition = gram_condition_number(h_hat);
  sol.f_bb = zf_baseband(h_hat, rf.f_rf);
  return sol;
}

PrecoderSolution beamsteering_from_rf(const RfStage& rf) {
  const Eigen::Index users = rf.f_rf.cols();
  PrecoderSolution sol;
  sol.scheme = Scheme::BeamsteeringOnly;
  sol.f_rf = rf.f_rf;
  sol.f_bb = CMatrix::Zero(users, users);
  for (Eigen::Index u = 0; u < users; ++u) sol.f_bb(u, u) = 1.0 / rf.f_rf.col(u).norm();
  sol.combiners = rf.combiners;
  sol.stage1_objective = rf.objective;
  return sol;
}

PrecoderSolution hybrid_precode(std::span<const ChannelRealization> channels,
                                const BeamSource& f_beams, const BeamSource& w_beams,
                                const Feedback& feedback) {
  return hybrid_from_rf(design_rf_stage(channels, f_beams, w_beams), feedback);
}

PrecoderSolution beamsteering_only(std::span<const ChannelRealization> channels,
                                   const BeamSource& f_beams, const BeamSource& w_beams) {
  return beamsteering_from_rf(design_rf_stage(channels, f_beams, w_beams));
}

PrecoderSolution block_diagonalization(std::span<const ChannelRealization> channels) {
  require_users(channels);
  const auto users = static_cast<Eigen::Index>(channels.size());
  const Eigen::Index n_bs = channels.front().matrix.cols();
  const Eigen::Index n_ms = channels.front().matrix.rows();

  PrecoderSolution sol;
  sol.scheme = Scheme::BlockDiagonalization;
  sol.f_rf = CMatrix::Identity(n_bs, n_bs);
  sol.f_bb.resize(n_bs, users);

  for (Eigen::Index u = 0; u < users; ++u) {
    CMatrix null_basis;
    if (users == 1) {
      null_basis = CMatrix::Identity(n_bs, n_bs);
    } else {
      CMatrix others((users - 1) * n_ms, n_bs);
      Eigen::Index row = 0;
      for (Eigen::Index n = 0; n < users; ++n) {
        if (n == u) continue;
        others.middleRows(row, n_ms) = channels[n].matrix;
        row += n_ms;
      }
      // The trailing columns of Q in others^H = QR span the null space of others.
      const Eigen::ColPivHouseholderQR<CMatrix> qr(others.adjoint());
      const Eigen::Index rank = qr.rank();
      if (n_bs - rank <= 0) {
        throw Infeasible("block diagonalization: no null space left for user " +
                         std::to_string(u));
      }
      const CMatrix q = qr.householderQ();
      null_basis = q.rightCols(n_bs - rank);
    }
    const CMatrix projected = channels[u].matrix * null_basis;
    const Eigen::JacobiSVD<CMatrix> svd(projected, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CVector precoder = null_basis * svd.matrixV().col(0);
    precoder.normalize();
    sol.f_bb.col(u) = precoder;
    sol.combiners.push_back(svd.matrixU().col(0));
    sol.stage1_objective.push_back(svd.singularValues()[0]);
  }
  return sol;
}

}  // namespace mmhybrid
