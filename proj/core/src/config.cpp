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
#include "mmhybrid/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "mmhybrid/errors.hpp"

namespace mmhybrid {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads keys from one JSON object and rejects the ones nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return doc_.contains(key); }

  const Json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = find(key);
    if (!v) throw ConfigError(field(key), "missing required key");
    return *v;
  }

  void read(const std::string& key, int& out) {
    if (const Json* v = find(key)) out = as_int(*v, field(key));
  }
  void read(const std::string& key, double& out) {
    if (const Json* v = find(key)) out = as_double(*v, field(key));
  }
  void read(const std::string& key, bool& out) {
    if (const Json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key), "expected a boolean");
      out = v->get<bool>();
    }
  }
  void read(const std::string& key, std::string& out) {
    if (const Json* v = find(key)) out = as_string(*v, field(key));
  }
  void read(const std::string& key, std::uint64_t& out) {
    if (const Json* v = find(key)) {
      if (v->is_number_unsigned()) {
        out = v->get<std::uint64_t>();
      } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
        out = static_cast<std::uint64_t>(v->get<std::int64_t>());
      } else {
        throw ConfigError(field(key), "expected a non-negative integer");
      }
    }
  }
  void read(const std::string& key, std::vector<int>& out) {
    if (const Json* v = find(key)) {
      const std::string f = field(key);
      if (!v->is_array()) throw ConfigError(f, "expected an array of integers");
      out.clear();
      for (const auto& e : *v) out.push_back(as_int(e, f));
    }
  }
  void read(const std::string& key, std::vector<double>& out) {
    if (const Json* v = find(key)) {
      const std::string f = field(key);
      if (!v->is_array()) throw ConfigError(f, "expected an array of numbers");
      out.clear();
      for (const auto& e : *v) out.push_back(as_double(e, f));
    }
  }

  std::string field(const std::string& key) const { return join(path_, key); }
  const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

  static int as_int(const Json& v, const std::string& f) {
    if (!v.is_number_integer()) throw ConfigError(f, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw ConfigError(f, "integer out of range");
    }
    return static_cast<int>(x);
  }
  static double as_double(const Json& v, const std::string& f) {
    if (!v.is_number()) throw ConfigError(f, "expected a number");
    return v.get<double>();
  }
  static std::string as_string(const Json& v, const std::string& f) {
    if (!v.is_string()) throw ConfigError(f, "expected a string");
    return v.get<std::string>();
  }

 private:
  const Json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

// Bits or a named sentinel ("continuous" / "perfect").
Json bits_to_json(const std::optional<int>& bits, const char* sentinel) {
  return bits ? Json(*bits) : Json(sentinel);
}

std::optional<int> bits_from_json(const Json& v, const std::string& f, const char* sentinel) {
  if (v.is_string()) {
    if (v.get<std::string>() == sentinel) return std::nullopt;
    throw ConfigError(f, std::string("expected an integer or \"") + sentinel + "\"");
  }
  return ObjectReader::as_int(v, f);
}

Json schemes_to_json(const std::vector<SchemeId>& schemes) {
  Json out = Json::array();
  for (SchemeId s : schemes) out.push_back(to_string(s));
  return out;
}

std::vector<SchemeId> schemes_from_json(const Json& v, const std::string& f) {
  if (!v.is_array()) throw ConfigError(f, "expected an array of scheme names");
  std::vector<SchemeId> out;
  for (const auto& e : v) {
    try {
      out.push_back(scheme_from_string(ObjectReader::as_string(e, f)));
    } catch (const std::invalid_argument& err) {
      throw ConfigError(f, err.what());
    }
  }
  return out;
}

Json channel_to_json(const ChannelConfig& c) {
  return Json{{"paths", c.paths},
              {"gain_variance", c.gain_variance},
              {"elevation", c.elevation == ElevationModel::Uniform ? "uniform" : "fixed"}};
}

ChannelConfig channel_from_json(const Json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  ChannelConfig c;
  r.read("paths", c.paths);
  r.read("gain_variance", c.gain_variance);
  std::string elevation = "uniform";
  r.read("elevation", elevation);
  if (elevation == "uniform") {
    c.elevation = ElevationModel::Uniform;
  } else if (elevation == "fixed") {
    c.elevation = ElevationModel::Fixed;
  } else {
    throw ConfigError(r.field("elevation"), "expected \"uniform\" or \"fixed\"");
  }
  r.finish();
  return c;
}

Json sweep_to_json(const Sweep& s) {
  return Json{{"kind", to_string(s.kind)}, {"values", s.values}, {"bounds", s.bounds}};
}

Sweep sweep_from_json(const Json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  Sweep s;
  std::string kind = "none";
  r.read("kind", kind);
  try {
    s.kind = sweep_kind_from_string(kind);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(r.field("kind"), err.what());
  }
  r.read("values", s.values);
  r.read("bounds", s.bounds);
  r.finish();
  return s;
}

std::string codebook_kind_name(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::BeamsteeringULA: return "beamsteering_ula";
    case CodebookKind::BeamsteeringUPA: return "beamsteering_upa";
    case CodebookKind::RVQ: return "rvq";
  }
  return "unknown";
}

CodebookKind codebook_kind_from(const std::string& name, const std::string& f) {
  for (CodebookKind k :
       {CodebookKind::BeamsteeringULA, CodebookKind::BeamsteeringUPA, CodebookKind::RVQ}) {
    if (codebook_kind_name(k) == name) return k;
  }
  throw ConfigError(f, "unknown codebook kind '" + name + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Hybrid: return "hybrid";
    case Scheme::BeamsteeringOnly: return "beamsteering";
    case Scheme::BlockDiagonalization: return "block_diagonalization";
  }
  return "unknown";
}

// Converts a byte offset of `text` into "line L, column C".
std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Json to_json(const ArrayGeometry& g) {
  if (g.kind() == ArrayKind::ULA) {
    return Json{{"kind", "ula"}, {"elements", g.size()}, {"spacing", g.spacing()}};
  }
  return Json{{"kind", "upa"},
              {"horizontal", g.n_horizontal()},
              {"vertical", g.n_vertical()},
              {"spacing", g.spacing()}};
}

ArrayGeometry geometry_from_json(const Json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  const std::string kind = ObjectReader::as_string(r.require("kind"), r.field("kind"));
  double spacing = 0.5;
  r.read("spacing", spacing);
  if (!(spacing > 0.0)) throw ConfigError(r.field("spacing"), "must be > 0");
  try {
    if (kind == "ula") {
      const int n = ObjectReader::as_int(r.require("elements"), r.field("elements"));
      r.finish();
      return ArrayGeometry::ula(n, spacing);
    }
    if (kind == "upa") {
      const int nh = ObjectReader::as_int(r.require("horizontal"), r.field("horizontal"));
      const int nv = ObjectReader::as_int(r.require("vertical"), r.field("vertical"));
      r.finish();
      return ArrayGeometry::upa(nh, nv, spacing);
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path, err.what());
  }
  throw ConfigError(r.field("kind"), "expected \"ula\" or \"upa\"");
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"type", "experiment"},
              {"name", c.name},
              {"bs_array", to_json(c.bs_geometry)},
              {"ms_array", to_json(c.ms_geometry)},
              {"users", c.users},
              {"channel", channel_to_json(c.channel)},
              {"snr_db", c.snr_db_grid},
              {"schemes", schemes_to_json(c.schemes)},
              {"rf_bits_bs", bits_to_json(c.rf_bits_bs, "continuous")},
              {"rf_bits_ms", bits_to_json(c.rf_bits_ms, "continuous")},
              {"bb_bits", bits_to_json(c.bb_bits, "perfect")},
              {"trials", c.trials},
              {"seed", c.seed},
              {"sweep", sweep_to_json(c.sweep)}};
}

ExperimentConfig experiment_from_json(const Json& doc) {
  ObjectReader r(doc, "");
  std::string type = "experiment";
  r.read("type", type);
  if (type != "experiment") throw ConfigError("type", "expected \"experiment\"");
  ExperimentConfig c;
  r.read("name", c.name);
  if (const Json* v = r.find("bs_array")) c.bs_geometry = geometry_from_json(*v, "bs_array");
  if (const Json* v = r.find("ms_array")) c.ms_geometry = geometry_from_json(*v, "ms_array");
  r.read("users", c.users);
  if (const Json* v = r.find("channel")) c.channel = channel_from_json(*v, "channel");
  r.read("snr_db", c.snr_db_grid);
  if (const Json* v = r.find("schemes")) c.schemes = schemes_from_json(*v, "schemes");
  if (const Json* v = r.find("rf_bits_bs")) c.rf_bits_bs = bits_from_json(*v, "rf_bits_bs", "continuous");
  if (const Json* v = r.find("rf_bits_ms")) c.rf_bits_ms = bits_from_json(*v, "rf_bits_ms", "continuous");
  if (const Json* v = r.find("bb_bits")) c.bb_bits = bits_from_json(*v, "bb_bits", "perfect");
  r.read("trials", c.trials);
  r.read("seed", c.seed);
  if (const Json* v = r.find("sweep")) c.sweep = sweep_from_json(*v, "sweep");
  r.finish();
  c.validate();
  return c;
}

Json to_json(const CellularConfig& c) {
  return Json{{"type", "coverage"},
              {"bs_density", c.bs_density},
              {"ms_density_factor", c.ms_density_factor},
              {"region", c.region},
              {"los_exponent", c.los_exponent},
              {"nlos_exponent", c.nlos_exponent},
              {"los_radius", c.los_radius ? Json(*c.los_radius) : Json("auto")},
              {"tx_snr_db", c.tx_snr_db},
              {"bs_array", to_json(c.bs_geometry)},
              {"ms_array", to_json(c.ms_geometry)},
              {"users_per_bs", c.users_per_bs},
              {"thresholds", c.thresholds},
              {"schemes", schemes_to_json(c.schemes)},
              {"trials", c.trials},
              {"seed", c.seed}};
}

CellularConfig cellular_from_json(const Json& doc) {
  ObjectReader r(doc, "");
  std::string type = "coverage";
  r.read("type", type);
  if (type != "coverage") throw ConfigError("type", "expected \"coverage\"");
  CellularConfig c;
  r.read("bs_density", c.bs_density);
  r.read("ms_density_factor", c.ms_density_factor);
  r.read("region", c.region);
  r.read("los_exponent", c.los_exponent);
  r.read("nlos_exponent", c.nlos_exponent);
  if (const Json* v = r.find("los_radius")) {
    if (v->is_string() && v->get<std::string>() == "auto") {
      c.los_radius.reset();
    } else {
      c.los_radius = ObjectReader::as_double(*v, "los_radius");
    }
  }
  r.read("tx_snr_db", c.tx_snr_db);
  if (const Json* v = r.find("bs_array")) c.bs_geometry = geometry_from_json(*v, "bs_array");
  if (const Json* v = r.find("ms_array")) c.ms_geometry = geometry_from_json(*v, "ms_array");
  r.read("users_per_bs", c.users_per_bs);
  r.read("thresholds", c.thresholds);
  if (const Json* v = r.find("schemes")) c.schemes = schemes_from_json(*v, "schemes");
  r.read("trials", c.trials);
  r.read("seed", c.seed);
  r.finish();
  c.validate();
  return c;
}

AnyConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  const auto it = doc.find("type");
  if (it == doc.end()) throw ConfigError("type", "missing required key");
  const std::string type = ObjectReader::as_string(*it, "type");
  if (type == "experiment") return experiment_from_json(doc);
  if (type == "coverage") return cellular_from_json(doc);
  throw ConfigError("type", "expected \"experiment\" or \"coverage\"");
}

Json to_json(const AnyConfig& config) {
  return std::visit([](const auto& c) { return to_json(c); }, config);
}

AnyConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw ConfigError("<json>", location(text, err.byte) + ": " + err.what());
  }
  return config_from_json(doc);
}

AnyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

Json to_json(const RateTable& table, const ExperimentConfig& config) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    rows.push_back(Json{{"scheme", r.scheme},
                        {"sweep_param", r.sweep_param},
                        {"snr_db", r.snr_db},
                        {"mean_rate", r.mean_rate},
                        {"std_err", r.std_err},
                        {"trials", r.trials},
                        {"excluded", r.excluded}});
  }
  return Json{{"config", to_json(config)}, {"sweep", table.sweep_name}, {"rows", rows}};
}

Json to_json(const CoverageTable& table, const CellularConfig& config) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    rows.push_back(Json{{"scheme", r.scheme},
                        {"n", r.n},
                        {"eta", r.eta},
                        {"coverage", r.coverage},
                        {"trials", r.trials},
                        {"samples", r.samples},
                        {"skipped_cells", r.skipped_cells}});
  }
  return Json{{"config", to_json(config)}, {"rows", rows}};
}

Json matrix_to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back(m(i, j).real());
      data.push_back(m(i, j).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMatrix matrix_from_json(const Json& doc) {
  ObjectReader r(doc, "matrix");
  const int rows = ObjectReader::as_int(r.require("rows"), r.field("rows"));
  const int cols = ObjectReader::as_int(r.require("cols"), r.field("cols"));
  const Json& data = r.require("data");
  r.finish();
  if (rows < 0 || cols < 0) throw ConfigError("matrix", "negative dimensions");
  if (!data.is_array() || data.size() != 2u * rows * cols) {
    throw ConfigError("matrix.data", "expected 2 * rows * cols numbers");
  }
  CMatrix m(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = ObjectReader::as_double(data[k++], "matrix.data");
      const double im = ObjectReader::as_double(data[k++], "matrix.data");
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Json to_json(const Codebook& codebook, bool include_vectors) {
  Json meta{{"azimuth_bits", codebook.metadata().azimuth_bits},
            {"elevation_bits", codebook.metadata().elevation_bits}};
  Json angles = Json::array();
  for (const auto& a : codebook.metadata().angles) angles.push_back({a.azimuth, a.elevation});
  meta["angles"] = angles;
  if (codebook.metadata().seed) meta["seed"] = *codebook.metadata().seed;
  Json doc{{"kind", codebook_kind_name(codebook.kind())},
           {"bits", codebook.bits()},
           {"dimension", codebook.dimension()},
           {"metadata", meta}};
  if (codebook.geometry()) doc["geometry"] = to_json(*codebook.geometry());
  if (include_vectors) doc["vectors"] = matrix_to_json(codebook.vectors());
  return doc;
}

Codebook codebook_from_json(const Json& doc) {
  ObjectReader r(doc, "codebook");
  const CodebookKind kind =
      codebook_kind_from(ObjectReader::as_string(r.require("kind"), r.field("kind")), r.field("kind"));
  const int bits = ObjectReader::as_int(r.require("bits"), r.field("bits"));
  int dimension = 0;
  r.read("dimension", dimension);
  CodebookMetadata meta;
  if (const Json* m = r.find("metadata")) {
    ObjectReader mr(*m, "codebook.metadata");
    mr.read("azimuth_bits", meta.azimuth_bits);
    mr.read("elevation_bits", meta.elevation_bits);
    if (const Json* a = mr.find("angles")) {
      if (!a->is_array()) throw ConfigError("codebook.metadata.angles", "expected an array");
      for (const auto& pair : *a) {
        if (!pair.is_array() || pair.size() != 2) {
          throw ConfigError("codebook.metadata.angles", "expected [azimuth, elevation] pairs");
        }
        meta.angles.push_back(SteeringAngle{ObjectReader::as_double(pair[0], "angles"),
                                            ObjectReader::as_double(pair[1], "angles")});
      }
    }
    if (mr.has("seed")) {
      std::uint64_t seed = 0;
      mr.read("seed", seed);
      meta.seed = seed;
    }
    mr.finish();
  }
  std::optional<ArrayGeometry> geometry;
  if (const Json* g = r.find("geometry")) geometry = geometry_from_json(*g, "codebook.geometry");
  const Json* vectors = r.find("vectors");
  r.finish();
  try {
    if (vectors) return Codebook(kind, bits, matrix_from_json(*vectors), meta, geometry);
    if (kind != CodebookKind::RVQ && geometry) return beamsteering_codebook(*geometry, bits);
    if (kind == CodebookKind::RVQ && meta.seed) return rvq_codebook(dimension, bits, *meta.seed);
  } catch (const std::invalid_argument& err) {
    throw ConfigError("codebook", err.what());
  }
  throw ConfigError("codebook.vectors", "missing and the codebook cannot be rebuilt");
}

Json to_json(const PrecoderSolution& s) {
  Json combiners = Json::array();
  for (const auto& w : s.combiners) combiners.push_back(matrix_to_json(w));
  return Json{{"scheme", scheme_name(s.scheme)},
              {"f_rf", matrix_to_json(s.f_rf)},
              {"f_bb", matrix_to_json(s.f_bb)},
              {"combiners", combiners},
              {"stage1_objective", s.stage1_objective},
              {"gram_condition", s.gram_condition}};
}

PrecoderSolution precoder_from_json(const Json& doc) {
  ObjectReader r(doc, "solution");
  PrecoderSolution s;
  const std::string scheme = ObjectReader::as_string(r.require("scheme"), r.field("scheme"));
  if (scheme == "hybrid") {
    s.scheme = Scheme::Hybrid;
  } else if (scheme == "beamsteering") {
    s.scheme = Scheme::BeamsteeringOnly;
  } else if (scheme == "block_diagonalization") {
    s.scheme = Scheme::BlockDiagonalization;
  } else {
    throw ConfigError(r.field("scheme"), "unknown scheme '" + scheme + "'");
  }
  s.f_rf = matrix_from_json(r.require("f_rf"));
  s.f_bb = matrix_from_json(r.require("f_bb"));
  const Json& combiners = r.require("combiners");
  if (!combiners.is_array()) throw ConfigError(r.field("combiners"), "expected an array");
  for (const auto& c : combiners) s.combiners.emplace_back(matrix_from_json(c));
  r.read("stage1_objective", s.stage1_objective);
  r.read("gram_condition", s.gram_condition);
  r.finish();
  return s;
}

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> list{
      {"fig3a", "Fig. 3(a)", "rate vs SNR, single-path, 8x8 BS / 4x4 MS UPAs, 4 users"},
      {"fig3b", "Fig. 3(b)", "rate vs N_BS = N_MS, 3 paths, with the virtual-model lower bound"},
      {"fig4a", "Fig. 4(a)", "rate vs number of BS antennas at 0 dB"},
      {"fig4b", "Fig. 4(b)", "rate vs number of MS antennas at 0 dB, 8x8 BS UPA"},
      {"fig5a", "Fig. 5(a)", "rate vs RF codebook bits, 3 paths, perfect feedback"},
      {"fig5b", "Fig. 5(b)", "rate vs RVQ feedback bits, 3 paths, 3/2 RF bits"},
      {"fig6", "Fig. 6", "per-user coverage in a Poisson cellular network, n = 2..5 users"},
  };
  return list;
}

AnyConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.bs_geometry = ArrayGeometry::upa(8, 8);
  c.ms_geometry = ArrayGeometry::upa(4, 4);
  c.users = 4;
  c.trials = 500;
  c.seed = 1;
  c.snr_db_grid = {0.0};
  c.schemes = {SchemeId::Hybrid, SchemeId::BeamsteeringOnly, SchemeId::SingleUser};
  if (name == "fig3a") {
    c.snr_db_grid = {-40.0, -30.0, -20.0, -10.0, 0.0};
    c.schemes = {SchemeId::Hybrid, SchemeId::BeamsteeringOnly, SchemeId::BlockDiagonalization,
                 SchemeId::SingleUser};
    return c;
  }
  if (name == "fig3b") {
    c.channel.paths = 3;
    c.sweep = Sweep{SweepKind::BothAntennas, {16, 36, 64}, true};
    return c;
  }
  if (name == "fig4a") {
    c.sweep = Sweep{SweepKind::BsAntennas, {16, 64, 256}, false};
    return c;
  }
  if (name == "fig4b") {
    c.sweep = Sweep{SweepKind::MsAntennas, {4, 16, 64}, false};
    return c;
  }
  if (name == "fig5a") {
    c.channel.paths = 3;
    c.schemes = {SchemeId::Hybrid, SchemeId::BeamsteeringOnly};
    c.sweep = Sweep{SweepKind::RfBits, {1, 2, 3, 4, 5, 6}, false};
    return c;
  }
  if (name == "fig5b") {
    c.channel.paths = 3;
    c.schemes = {SchemeId::Hybrid, SchemeId::BeamsteeringOnly};
    c.rf_bits_bs = 3;
    c.rf_bits_ms = 2;
    c.sweep = Sweep{SweepKind::BbBits, {1, 2, 4, 6, 8, 10, 12}, true};
    return c;
  }
  if (name == "fig6") {
    CellularConfig cell;
    cell.trials = 100;
    return cell;
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace mmhybrid
