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
#include "mmhybrid/arrays.hpp"

#include <cmath>
#include <stdexcept>

namespace mmhybrid {

double wrap_azimuth(double azimuth) {
  double wrapped = std::fmod(azimuth, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a value just below 0 can round up to exactly 2*pi.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

SteeringAngle SteeringAngle::make(double azimuth, double elevation) {
  return SteeringAngle{wrap_azimuth(azimuth), elevation};
}

ArrayGeometry::ArrayGeometry(ArrayKind kind, int n_horizontal, int n_vertical, double spacing)
    : kind_(kind), n_horizontal_(n_horizontal), n_vertical_(n_vertical), spacing_(spacing) {
  if (n_horizontal < 1 || n_vertical < 1) {
    throw std::invalid_argument("array dimensions must be >= 1");
  }
  if (!(spacing > 0.0)) throw std::invalid_argument("element spacing must be > 0");
}

ArrayGeometry ArrayGeometry::ula(int n_elements, double spacing) {
  return ArrayGeometry(ArrayKind::ULA, n_elements, 1, spacing);
}

ArrayGeometry ArrayGeometry::upa(int n_horizontal, int n_vertical, double spacing) {
  return ArrayGeometry(ArrayKind::UPA, n_horizontal, n_vertical, spacing);
}

std::pair<double, double> ArrayGeometry::spatial_frequencies(const SteeringAngle& angle) const {
  if (kind_ == ArrayKind::ULA) {
    return {kTwoPi * spacing_ * std::sin(angle.azimuth), 0.0};
  }
  return {kTwoPi * spacing_ * std::sin(angle.azimuth) * std::sin(angle.elevation),
          kTwoPi * spacing_ * std::cos(angle.elevation)};
}

CVector ArrayGeometry::response(const SteeringAngle& angle) const {
  if (kind_ == ArrayKind::ULA) return ula_response(size(), spacing_, angle.azimuth);
  return upa_response(*this, angle);
}

CVector response_at_frequency(int n, double spatial_frequency) {
  CVector a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) {
    a[m] = std::polar(scale, spatial_frequency * m);
  }
  return a;
}

CVector ula_response(int n, double spacing, double azimuth) {
  return response_at_frequency(n, kTwoPi * spacing * std::sin(azimuth));
}

CVector upa_response(const ArrayGeometry& geometry, const SteeringAngle& angle) {
  const auto [psi_h, psi_v] = geometry.spatial_frequencies(angle);
  const int nh = geometry.n_horizontal();
  const int nv = geometry.n_vertical();
  const double scale = 1.0 / std::sqrt(static_cast<double>(nh * nv));
  CVector a(nh * nv);
  for (int h = 0; h < nh; ++h) {
    for (int v = 0; v < nv; ++v) {
      a[h * nv + v] = std::polar(scale, psi_h * h + psi_v * v);
    }
  }
  return a;
}

CMatrix virtual_direction_matrix(int n) {
  if (n < 1) throw std::invalid_argument("virtual_direction_matrix: n must be >= 1");
  CMatrix a(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int p = 0; p < n; ++p) {
    for (int m = 0; m < n; ++m) {
      // Reduce p*m modulo n first so the phase stays exact for large arrays.
      const double phase = kTwoPi * static_cast<double>((p * m) % n) / n;
      a(m, p) = std::polar(scale, phase);
    }
  }
  return a;
}

CMatrix virtual_direction_matrix(const ArrayGeometry& geometry) {
  if (geometry.kind() == ArrayKind::ULA) return virtual_direction_matrix(geometry.size());
  return kronecker(virtual_direction_matrix(geometry.n_horizontal()),
                   virtual_direction_matrix(geometry.n_vertical()));
}

CMatrix kronecker(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace mmhybrid
