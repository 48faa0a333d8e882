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
#include "mmhybrid/errors.hpp"

#include <sstream>

namespace mmhybrid {

namespace {
std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << value;
  return os.str();
}
}  // namespace

IllConditioned::IllConditioned(double condition_number)
    : Error(describe("effective channel Gram matrix is ill-conditioned, condition number ",
                     condition_number)),
      condition_number_(condition_number) {}

DegenerateAngles::DegenerateAngles(double sigma_min)
    : Error(describe("steering matrix is rank deficient (coincident AoDs), sigma_min ", sigma_min)),
      sigma_min_(sigma_min) {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field.empty() ? message : "'" + field + "': " + message), field_(std::move(field)) {}

}  // namespace mmhybrid
