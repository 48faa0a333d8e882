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

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmhybrid/cellular.hpp"
#include "mmhybrid/codebooks.hpp"
#include "mmhybrid/harness.hpp"
#include "mmhybrid/precoding.hpp"

namespace mmhybrid {

using Json = nlohmann::ordered_json;

/// A configuration document is either a link-level experiment or a coverage run.
using AnyConfig = std::variant<ExperimentConfig, CellularConfig>;

// Serialization. Every field is written, so parsing the output reproduces the
// input exactly. Parsing is strict: unknown keys and wrong types raise
// ConfigError with the dotted key path; absent keys keep their defaults.

Json to_json(const ArrayGeometry& geometry);
ArrayGeometry geometry_from_json(const Json& doc, const std::string& path = "array");

Json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_from_json(const Json& doc);

Json to_json(const CellularConfig& config);
CellularConfig cellular_from_json(const Json& doc);

/// Dispatches on the "type" key ("experiment" or "coverage").
AnyConfig config_from_json(const Json& doc);
Json to_json(const AnyConfig& config);

/// Parses JSON text. Syntax errors report line and column.
AnyConfig parse_config(const std::string& text);

/// Reads and parses a file. A missing file raises ConfigError naming the path.
AnyConfig load_config(const std::filesystem::path& path);

/// Result document embedding the producing configuration.
Json to_json(const RateTable& table, const ExperimentConfig& config);
Json to_json(const CoverageTable& table, const CellularConfig& config);

/// Complex matrices are stored as {"rows", "cols", "data"} with data holding
/// row-major interleaved real and imaginary parts.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& doc);

Json to_json(const Codebook& codebook, bool include_vectors = true);
/// Requires the vectors unless the codebook can be rebuilt (beamsteering with
/// geometry, or RVQ with a seed).
Codebook codebook_from_json(const Json& doc);

Json to_json(const PrecoderSolution& solution);
PrecoderSolution precoder_from_json(const Json& doc);

struct PresetInfo {
  std::string name;
  std::string figure;
  std::string description;
};

/// Built-in configurations for the reference figures, at desk-scale trial counts.
const std::vector<PresetInfo>& presets();
/// Throws ConfigError("preset", ...) for unknown names.
AnyConfig preset(const std::string& name);

}  // namespace mmhybrid
