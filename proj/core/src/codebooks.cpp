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
#include "mmhybrid/codebooks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmhybrid {

namespace {

constexpr double kUnitNormTolerance = 1e-12;

void require_bits(int bits) {
  if (bits < 0 || bits > 24) throw std::invalid_argument("codebook bits must be in [0, 24]");
}

// |sum_{m<n} exp(j*m*x)| / n.
double dirichlet_magnitude(int n, double x) {
  const double half = 0.5 * x;
  const double denom = std::sin(half);
  if (std::abs(denom) < 1e-12) return 1.0;
  return std::min(1.0, std::abs(std::sin(n * half) / (n * denom)));
}

}  // namespace

Codebook::Codebook(CodebookKind kind, int bits, CMatrix vectors, CodebookMetadata metadata,
                   std::optional<ArrayGeometry> geometry)
    : kind_(kind),
      bits_(bits),
      vectors_(std::move(vectors)),
      metadata_(std::move(metadata)),
      geometry_(std::move(geometry)) {
  require_bits(bits);
  if (vectors_.cols() != (Eigen::Index{1} << bits)) {
    throw std::invalid_argument("codebook must hold exactly 2^bits codewords");
  }
  if (vectors_.rows() < 1) throw std::invalid_argument("codeword dimension must be >= 1");
  for (Eigen::Index i = 0; i < vectors_.cols(); ++i) {
    if (std::abs(vectors_.col(i).norm() - 1.0) > kUnitNormTolerance) {
      throw std::invalid_argument("codewords must have unit norm");
    }
  }
  if (is_beamsteering() && metadata_.angles.size() != static_cast<std::size_t>(size())) {
    throw std::invalid_argument("beamsteering codebook needs one steering angle per codeword");
  }
}

Codebook beamsteering_codebook(const ArrayGeometry& geometry, int bits) {
  require_bits(bits);
  const int count = 1 << bits;
  CodebookMetadata meta;
  meta.angles.reserve(count);
  if (geometry.kind() == ArrayKind::ULA) {
    meta.azimuth_bits = bits;
    for (int k = 0; k < count; ++k) {
      meta.angles.push_back(SteeringAngle{kTwoPi * k / count, 0.0});
    }
  } else {
    meta.azimuth_bits = (bits + 1) / 2;
    meta.elevation_bits = bits / 2;
    const int n_az = 1 << meta.azimuth_bits;
    const int n_el = 1 << meta.elevation_bits;
    for (int k = 0; k < n_az; ++k) {
      for (int j = 0; j < n_el; ++j) {
        meta.angles.push_back(SteeringAngle{kTwoPi * k / n_az, -kPi / 2.0 + kPi * j / n_el});
      }
    }
  }
  CMatrix vectors(geometry.size(), count);
  for (int k = 0; k < count; ++k) vectors.col(k) = geometry.response(meta.angles[k]);
  const auto kind = geometry.kind() == ArrayKind::ULA ? CodebookKind::BeamsteeringULA
                                                      : CodebookKind::BeamsteeringUPA;
  return Codebook(kind, bits, std::move(vectors), std::move(meta), geometry);
}

Codebook rvq_codebook(int dimension, int bits, Rng& rng) {
  require_bits(bits);
  if (dimension < 1) throw std::invalid_argument("rvq_codebook: dimension must be >= 1");
  const int count = 1 << bits;
  CMatrix vectors(dimension, count);
  for (int k = 0; k < count; ++k) {
    for (int d = 0; d < dimension; ++d) vectors(d, k) = complex_gaussian(rng);
    vectors.col(k).normalize();
  }
  return Codebook(CodebookKind::RVQ, bits, std::move(vectors));
}

Codebook rvq_codebook(int dimension, int bits, std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  Codebook drawn = rvq_codebook(dimension, bits, rng);
  CodebookMetadata meta;
  meta.seed = seed;
  return Codebook(CodebookKind::RVQ, bits, drawn.vectors(), std::move(meta));
}

double min_max_correlation(const Codebook& codebook, int probe_grid_size) {
  if (!codebook.is_beamsteering() || !codebook.geometry()) {
    throw std::invalid_argument("min_max_correlation requires a beamsteering codebook");
  }
  if (probe_grid_size < 10 * codebook.size()) {
    throw std::invalid_argument("probe grid must be at least 10x the codebook size");
  }
  const ArrayGeometry& geometry = *codebook.geometry();
  const int nh = geometry.n_horizontal();
  const int nv = geometry.n_vertical();

  std::vector<std::pair<double, double>> code_freqs;
  code_freqs.reserve(codebook.metadata().angles.size());
  for (const auto& angle : codebook.metadata().angles) {
    code_freqs.push_back(geometry.spatial_frequencies(angle));
  }

  // |a(probe)^H c| factorizes into horizontal and vertical Dirichlet kernels
  // because both vectors are separable array responses.
  auto best_match = [&](double psi_h, double psi_v) {
    double best = 0.0;
    for (const auto& [ch, cv] : code_freqs) {
      const double corr = dirichlet_magnitude(nh, psi_h - ch) *
                          (nv > 1 ? dirichlet_magnitude(nv, psi_v - cv) : 1.0);
      best = std::max(best, corr);
    }
    return best;
  };

  double floor = std::numeric_limits<double>::infinity();
  if (geometry.kind() == ArrayKind::ULA) {
    for (int i = 0; i < probe_grid_size; ++i) {
      const auto [psi, unused] =
          geometry.spatial_frequencies(SteeringAngle{kTwoPi * i / probe_grid_size, 0.0});
      floor = std::min(floor, best_match(psi, 0.0));
    }
  } else {
    for (int i = 0; i < probe_grid_size; ++i) {
      const double az = kTwoPi * i / probe_grid_size;
      for (int j = 0; j < probe_grid_size; ++j) {
        const double el = -kPi / 2.0 + kPi * j / (probe_grid_size - 1);
        const auto [psi_h, psi_v] = geometry.spatial_frequencies(SteeringAngle{az, el});
        floor = std::min(floor, best_match(psi_h, psi_v));
      }
    }
  }
  return floor;
}

double literal_min_max_correlation(const Codebook& codebook) {
  const Eigen::MatrixXd gram = (codebook.vectors().adjoint() * codebook.vectors()).cwiseAbs();
  return gram.rowwise().maxCoeff().minCoeff();
}

QuantizedVector quantize(const Codebook& codebook, const CVector& target) {
  if (codebook.size() == 0) throw std::invalid_argument("quantize: empty codebook");
  if (target.size() != codebook.dimension()) {
    throw std::invalid_argument("quantize: target dimension does not match codebook");
  }
  const Eigen::VectorXd corr = (codebook.vectors().adjoint() * target).cwiseAbs();
  const double floor = corr.maxCoeff() * (1.0 - kTieTolerance);
  int best = 0;
  while (corr[best] < floor) ++best;
  return {best, codebook.codeword(best), corr[best]};
}

}  // namespace mmhybrid
