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

#include <utility>

#include "mmhybrid/types.hpp"

namespace mmhybrid {

enum class ArrayKind { ULA, UPA };

/// Direction of a path or beam. Azimuth is kept in [0, 2*pi); elevation is
/// only meaningful for planar arrays.
struct SteeringAngle {
  double azimuth = 0.0;
  double elevation = 0.0;

  /// Builds an angle with azimuth wrapped into [0, 2*pi).
  static SteeringAngle make(double azimuth, double elevation = 0.0);
};

double wrap_azimuth(double azimuth);

/// Uniform linear or planar antenna array. Spacing is in wavelengths.
///
/// Planar arrays are indexed horizontal-major: element (h, v) sits at
/// position h * n_vertical + v of every response vector.
class ArrayGeometry {
 public:
  static ArrayGeometry ula(int n_elements, double spacing = 0.5);
  static ArrayGeometry upa(int n_horizontal, int n_vertical, double spacing = 0.5);

  ArrayKind kind() const noexcept { return kind_; }
  int size() const noexcept { return n_horizontal_ * n_vertical_; }
  int n_horizontal() const noexcept { return n_horizontal_; }
  int n_vertical() const noexcept { return n_vertical_; }
  double spacing() const noexcept { return spacing_; }

  /// Unit-norm array response in direction `angle`.
  CVector response(const SteeringAngle& angle) const;

  /// Per-element phase steps (horizontal, vertical) for `angle`, in radians.
  /// For a ULA only the first component is used.
  std::pair<double, double> spatial_frequencies(const SteeringAngle& angle) const;

  bool operator==(const ArrayGeometry&) const = default;

 private:
  ArrayGeometry(ArrayKind kind, int n_horizontal, int n_vertical, double spacing);

  ArrayKind kind_;
  int n_horizontal_;
  int n_vertical_;
  double spacing_;
};

/// Unit-norm response exp(j*m*frequency)/sqrt(n), m = 0..n-1.
CVector response_at_frequency(int n, double spatial_frequency);

/// ULA response: entry m is exp(j*2*pi*spacing*m*sin(azimuth))/sqrt(n).
CVector ula_response(int n, double spacing, double azimuth);

/// Separable planar response: horizontal factor with phase step
/// 2*pi*d*sin(az)*sin(el), vertical factor with phase step 2*pi*d*cos(el).
CVector upa_response(const ArrayGeometry& geometry, const SteeringAngle& angle);

/// Unitary DFT matrix whose column p is the response at spatial frequency 2*pi*p/n.
CMatrix virtual_direction_matrix(int n);

/// Virtual direction matrix of a uniform array. For a UPA this is the
/// Kronecker product of the horizontal and vertical DFT matrices.
CMatrix virtual_direction_matrix(const ArrayGeometry& geometry);

/// Kronecker product of two complex matrices.
CMatrix kronecker(const CMatrix& a, const CMatrix& b);

}  // namespace mmhybrid
