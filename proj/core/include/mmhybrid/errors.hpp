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

#include <stdexcept>
#include <string>

namespace mmhybrid {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-forcing input whose Gram matrix exceeds the conditioning threshold.
/// Typically two users fed back (nearly) the same quantized effective channel.
class IllConditioned : public Error {
 public:
  explicit IllConditioned(double condition_number);
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

/// Block diagonalization null space is empty for some user.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Coincident departure angles make the steering matrix rank deficient.
class DegenerateAngles : public Error {
 public:
  explicit DegenerateAngles(double sigma_min);
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Target loss factor for which the required bit count is undefined.
class InvalidTarget : public Error {
 public:
  using Error::Error;
};

/// Invalid or malformed configuration. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mmhybrid
