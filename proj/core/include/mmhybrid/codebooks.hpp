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

#include <cstdint>
#include <optional>
#include <vector>

#include "mmhybrid/arrays.hpp"
#include "mmhybrid/rng.hpp"

namespace mmhybrid {

enum class CodebookKind { BeamsteeringULA, BeamsteeringUPA, RVQ };

struct CodebookMetadata {
  /// Steering angle of every codeword (beamsteering kinds only).
  std::vector<SteeringAngle> angles;
  /// Split of the bit budget between azimuth and elevation grids (UPA only).
  int azimuth_bits = 0;
  int elevation_bits = 0;
  /// Generator seed (RVQ built from a seed only).
  std::optional<std::uint64_t> seed;
};

/// Ordered set of 2^bits unit-norm codewords, stored as matrix columns.
class Codebook {
 public:
  /// Validates the codeword count and unit norms; throws std::invalid_argument.
  Codebook(CodebookKind kind, int bits, CMatrix vectors, CodebookMetadata metadata = {},
           std::optional<ArrayGeometry> geometry = std::nullopt);

  CodebookKind kind() const noexcept { return kind_; }
  int bits() const noexcept { return bits_; }
  int size() const noexcept { return static_cast<int>(vectors_.cols()); }
  int dimension() const noexcept { return static_cast<int>(vectors_.rows()); }
  const CMatrix& vectors() const noexcept { return vectors_; }
  CVector codeword(int index) const { return vectors_.col(index); }
  const CodebookMetadata& metadata() const noexcept { return metadata_; }
  /// Array the beamsteering codewords were built for.
  const std::optional<ArrayGeometry>& geometry() const noexcept { return geometry_; }
  bool is_beamsteering() const noexcept { return kind_ != CodebookKind::RVQ; }

 private:
  CodebookKind kind_;
  int bits_;
  CMatrix vectors_;
  CodebookMetadata metadata_;
  std::optional<ArrayGeometry> geometry_;
};

/// Quantized beamsteering codebook of 2^bits array responses.
///
/// ULA: azimuths 2*pi*k/2^bits. UPA: ceil(bits/2) azimuth bits on the same
/// rule and floor(bits/2) elevation bits on -pi/2 + pi*j/2^elevation_bits;
/// codeword index is k * 2^elevation_bits + j.
Codebook beamsteering_codebook(const ArrayGeometry& geometry, int bits);

/// Random vector quantization codebook: 2^bits vectors uniform on the complex
/// unit sphere of the given dimension.
Codebook rvq_codebook(int dimension, int bits, Rng& rng);

/// Same as above from a seed, which is recorded in the metadata.
Codebook rvq_codebook(int dimension, int bits, std::uint64_t seed);

inline constexpr int kDefaultProbeGridSize = 1024;

/// Worst-case quantization correlation of a beamsteering codebook: the minimum
/// over a dense grid of continuous steering directions of the best codeword
/// correlation. Planar arrays probe a grid_size x grid_size (azimuth,
/// elevation) grid. Rejects RVQ codebooks and grids smaller than 10x the
/// codebook size.
double min_max_correlation(const Codebook& codebook, int probe_grid_size = kDefaultProbeGridSize);

/// min_f max_g |f^H g| with both f and g ranging over the codebook itself.
/// Always 1 since every codeword matches itself; kept for comparison.
double literal_min_max_correlation(const Codebook& codebook);

struct QuantizedVector {
  int index = 0;
  CVector codeword;
  double correlation = 0.0;  // |target^H codeword|
};

/// Relative gap under which two correlations count as a tie. Angle-uniform
/// beam grids hold mirror-image codewords that differ only by rounding.
inline constexpr double kTieTolerance = 1e-12;

/// Codeword with the largest |target^H c|; the lowest index wins ties.
QuantizedVector quantize(const Codebook& codebook, const CVector& target);

}  // namespace mmhybrid
