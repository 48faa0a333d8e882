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
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mmhybrid/arrays.hpp"
#include "mmhybrid/cellular.hpp"
#include "mmhybrid/codebooks.hpp"
#include "mmhybrid/config.hpp"
#include "mmhybrid/errors.hpp"
#include "mmhybrid/harness.hpp"
#include "mmhybrid/metrics.hpp"

namespace mmhybrid::cli {

namespace {

namespace fs = std::filesystem;

// Raised for failures that are not configuration problems.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunArgs {
  std::string config_path;
  std::string preset_name;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int workers = 0;
  std::string out_dir;
  std::string format = "csv";
  bool plot_script = false;
};

struct BoundArgs {
  bool theorem1 = false;
  bool theorem2 = false;
  bool corollary2 = false;
  bool largedim = false;
  bool prop3 = false;
  double snr_db = 0.0;
  int users = 4;
  int n_bs = 64;
  int n_ms = 16;
  int paths = 1;
  double alpha_bar = 1.0;
  double bb_bits = 8.0;
  double mu_bs = 1.0;
  double mu_ms = 1.0;
  std::optional<int> rf_bits_bs;
  std::optional<int> rf_bits_ms;
  double target_b = 2.0;
  std::string bs_kind = "ula";
  std::vector<double> aods;
  std::vector<double> gains;
};

struct PresetArgs {
  std::string name;
  bool list = false;
  std::string out_dir;
};

std::string preset_footer() {
  std::ostringstream os;
  os << "Presets (use --preset NAME, or `preset NAME` to print the expanded config):\n";
  for (const auto& p : presets()) {
    os << "  " << std::left << std::setw(7) << p.name << std::setw(12) << p.figure
       << p.description << '\n';
  }
  os << "\nConfig files may omit keys; omitted keys take the library defaults (see README).\n"
     << "Output directory defaults to $" << kOutDirEnv << ", else the current directory.\n"
     << "Exit codes: 0 success, 1 configuration error, 2 runtime failure.";
  return os.str();
}

void add_run_options(CLI::App* cmd, RunArgs& a) {
  auto* source = cmd->add_option_group("source");
  source->add_option("--config", a.config_path, "JSON configuration file");
  source->add_option("--preset", a.preset_name, "Built-in configuration name");
  source->require_option(1);
  cmd->add_option("--seed", a.seed, "Override the master seed");
  cmd->add_option("--trials", a.trials, "Override the trial count")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", a.workers, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", a.out_dir, "Output directory");
  cmd->add_option("--format", a.format, "Result table format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--emit-plot-script", a.plot_script,
                "Also write a matplotlib script that plots the CSV");
}

AnyConfig resolve_config(const RunArgs& a, std::string& name) {
  AnyConfig config;
  if (!a.preset_name.empty()) {
    config = preset(a.preset_name);
    name = a.preset_name;
  } else {
    config = load_config(a.config_path);
    name = fs::path(a.config_path).stem().string();
  }
  if (auto* e = std::get_if<ExperimentConfig>(&config)) {
    if (a.seed) e->seed = *a.seed;
    if (a.trials) e->trials = *a.trials;
    name = e->name;
  } else {
    auto& c = std::get<CellularConfig>(config);
    if (a.seed) c.seed = *a.seed;
    if (a.trials) c.trials = *a.trials;
  }
  return config;
}

fs::path output_dir(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return fs::current_path();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw RuntimeFailure("cannot write " + path.string());
  file << text;
  if (!file) throw RuntimeFailure("failed writing " + path.string());
}

std::string plot_script(const std::string& csv_name, bool coverage) {
  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "# Plots " << csv_name << ". Requires matplotlib.\n"
     << "import csv, collections, pathlib\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "path = pathlib.Path(__file__).with_name('" << csv_name << "')\n"
     << "rows = list(csv.DictReader(path.open()))\n"
     << "series = collections.defaultdict(list)\n";
  if (coverage) {
    os << "for r in rows:\n"
       << "    series[(r['scheme'], r['n'])].append((float(r['eta']), float(r['coverage'])))\n"
       << "xlabel, ylabel = 'rate threshold (bits/s/Hz)', 'coverage probability'\n"
       << "label = lambda k: f'{k[0]} n={k[1]}'\n";
  } else {
    os << "swept = any(r['sweep_param'] != rows[0]['sweep_param'] for r in rows)\n"
       << "for r in rows:\n"
       << "    x = float(r['sweep_param']) if swept else float(r['snr_db'])\n"
       << "    key = (r['scheme'], r['snr_db']) if swept else (r['scheme'], '')\n"
       << "    series[key].append((x, float(r['mean_rate'])))\n"
       << "xlabel = 'sweep parameter' if swept else 'SNR (dB)'\n"
       << "ylabel = 'spectral efficiency (bits/s/Hz)'\n"
       << "label = lambda k: k[0] + (f' @ {k[1]} dB' if k[1] else '')\n";
  }
  os << "for key, pts in series.items():\n"
     << "    pts.sort()\n"
     << "    plt.plot([p[0] for p in pts], [p[1] for p in pts], marker='o', label=label(key))\n"
     << "plt.xlabel(xlabel)\n"
     << "plt.ylabel(ylabel)\n"
     << "plt.grid(True)\n"
     << "plt.legend()\n"
     << "plt.savefig(path.with_suffix('.png'), dpi=150)\n";
  return os.str();
}

void check_sweep_kind(const std::string& command, const ExperimentConfig& config) {
  const SweepKind kind = config.sweep.kind;
  bool ok = false;
  if (command == "rates") ok = kind == SweepKind::None;
  if (command == "antenna-sweep") {
    ok = kind == SweepKind::BsAntennas || kind == SweepKind::MsAntennas ||
         kind == SweepKind::BothAntennas;
  }
  if (command == "quant-sweep") ok = kind == SweepKind::BbBits || kind == SweepKind::RfBits;
  if (!ok) {
    throw ConfigError("sweep.kind", "sweep kind '" + to_string(kind) +
                                        "' cannot be run by the '" + command + "' subcommand");
  }
}

void require_some_trials(const RateTable& table, const ExperimentConfig& config) {
  for (const auto& row : table.rows) {
    for (SchemeId s : config.schemes) {
      if (row.scheme == to_string(s) && row.trials > 0) return;
    }
  }
  throw RuntimeFailure("every trial was excluded (ill-conditioned or infeasible)");
}

void require_some_samples(const CoverageTable& table) {
  for (const auto& row : table.rows) {
    if (row.samples > 0) return;
  }
  throw RuntimeFailure("no cell could be served in any trial");
}

int run_simulation(const std::string& command, const RunArgs& a, std::ostream& out) {
  std::string name;
  const AnyConfig config = resolve_config(a, name);
  const RunOptions options{a.workers};

  std::string table_text;
  std::string csv_text;
  Json config_doc = to_json(config);
  bool coverage = false;
  if (command == "coverage") {
    const auto* c = std::get_if<CellularConfig>(&config);
    if (c == nullptr) throw ConfigError("type", "the coverage subcommand needs a coverage config");
    const CoverageTable table = run_coverage(*c, options);
    require_some_samples(table);
    std::ostringstream csv;
    write_csv(csv, table);
    csv_text = csv.str();
    if (a.format == "json") table_text = to_json(table, *c).dump(2) + "\n";
    coverage = true;
  } else {
    const auto* e = std::get_if<ExperimentConfig>(&config);
    if (e == nullptr) {
      throw ConfigError("type", "the " + command + " subcommand needs an experiment config");
    }
    check_sweep_kind(command, *e);
    const RateTable table = run_experiment(*e, options);
    require_some_trials(table, *e);
    std::ostringstream csv;
    write_csv(csv, table);
    csv_text = csv.str();
    if (a.format == "json") table_text = to_json(table, *e).dump(2) + "\n";
  }

  const fs::path dir = output_dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create output directory " + dir.string());
  const fs::path table_path = dir / (name + (a.format == "json" ? ".json" : ".csv"));
  write_text(table_path, a.format == "json" ? table_text : csv_text);
  write_text(dir / (name + ".config.json"), config_doc.dump(2) + "\n");
  out << "wrote " << table_path.string() << '\n';
  if (a.plot_script) {
    // The script always reads CSV, so emit one alongside JSON output.
    const std::string csv_name = name + ".csv";
    if (a.format == "json") write_text(dir / csv_name, csv_text);
    write_text(dir / (name + ".plot.py"), plot_script(csv_name, coverage));
  }
  return kExitOk;
}

void print_value(std::ostream& out, const std::string& label, double value) {
  out << label << ' ' << std::setprecision(17) << value << '\n';
}

int run_bounds(const BoundArgs& b, std::ostream& out) {
  const int selected = int{b.theorem1} + int{b.theorem2} + int{b.corollary2} + int{b.largedim} +
                       int{b.prop3};
  if (selected != 1) {
    throw ConfigError("bounds", "select exactly one of --theorem1, --theorem2, --corollary2, "
                                "--largedim, --prop3-factor");
  }
  if (b.users < 1) throw ConfigError("users", "must be >= 1");
  if (b.n_bs < 1) throw ConfigError("n-bs", "must be >= 1");
  if (b.n_ms < 1) throw ConfigError("n-ms", "must be >= 1");
  if (b.paths < 1) throw ConfigError("paths", "must be >= 1");
  const double snr = std::pow(10.0, b.snr_db / 10.0);

  auto mu = [](std::optional<int> bits, double given, const ArrayGeometry& geometry) {
    return bits ? min_max_correlation(beamsteering_codebook(geometry, *bits)) : given;
  };
  auto geometry = [&](int n, const std::string& field) {
    if (b.bs_kind == "ula") return ArrayGeometry::ula(n);
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) throw ConfigError(field, "planar arrays need a perfect-square size");
    return ArrayGeometry::upa(side, side);
  };

  if (b.theorem1) {
    if (b.aods.size() != static_cast<std::size_t>(b.users)) {
      throw ConfigError("aods", "needs one azimuth per user");
    }
    std::vector<Complex> gains(b.aods.size(), Complex(1.0, 0.0));
    if (!b.gains.empty()) {
      if (b.gains.size() != b.aods.size()) throw ConfigError("gains", "needs one gain per user");
      for (std::size_t i = 0; i < gains.size(); ++i) gains[i] = Complex(b.gains[i], 0.0);
    }
    std::vector<SteeringAngle> angles;
    for (double az : b.aods) angles.push_back(SteeringAngle::make(az, kPi / 2.0));
    const auto bound = theorem1_bound(geometry(b.n_bs, "n-bs"), angles, gains, b.n_ms, snr);
    for (std::size_t u = 0; u < bound.size(); ++u) {
      print_value(out, "theorem1_user" + std::to_string(u), bound[u]);
    }
    return kExitOk;
  }
  const ArrayGeometry bs_array = geometry(b.n_bs, "n-bs");
  const ArrayGeometry ms_array = b.bs_kind == "ula" ? ArrayGeometry::ula(b.n_ms)
                                                    : geometry(b.n_ms, "n-ms");
  const double mu_bs = mu(b.rf_bits_bs, b.mu_bs, bs_array);
  const double mu_ms = mu(b.rf_bits_ms, b.mu_ms, ms_array);
  if (b.theorem2) {
    print_value(out, "theorem2_loss_bound",
                theorem2_loss_bound(snr, b.users, b.n_bs, b.n_ms, b.alpha_bar, b.bb_bits, mu_bs,
                                    mu_ms));
  } else if (b.corollary2) {
    print_value(out, "corollary2_bits",
                corollary2_bits(b.snr_db, b.users, b.n_bs, b.n_ms, b.alpha_bar, mu_bs, mu_ms,
                                b.target_b));
  } else if (b.largedim) {
    print_value(out, "largedim_loss_bound",
                largedim_loss_bound(snr, b.users, b.n_bs, b.n_ms, b.paths, b.alpha_bar,
                                    b.bb_bits));
  } else {
    const Prop3Bound p = prop3_factor(b.n_bs, b.n_ms, b.paths, b.users);
    print_value(out, "prop3_factor", p.factor);
    if (p.clamped) out << "note: a negative product term was clamped to 0\n";
  }
  return kExitOk;
}

int run_preset(const PresetArgs& p, std::ostream& out) {
  if (p.list || p.name.empty()) {
    for (const auto& info : presets()) {
      out << info.name << '\t' << info.figure << '\t' << info.description << '\n';
    }
    return kExitOk;
  }
  const std::string text = to_json(preset(p.name)).dump(2) + "\n";
  if (p.out_dir.empty()) {
    out << text;
    return kExitOk;
  }
  const fs::path dir = p.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create output directory " + dir.string());
  write_text(dir / (p.name + ".config.json"), text);
  out << "wrote " << (dir / (p.name + ".config.json")).string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-user mmWave hybrid precoding simulator", "mmhybrid"};
  app.footer(preset_footer());
  app.require_subcommand(1);
  app.set_version_flag("--version", "mmhybrid 0.1.0");

  RunArgs run_args;
  const std::vector<std::pair<std::string, std::string>> simulations{
      {"rates", "Mean per-user rate versus SNR"},
      {"antenna-sweep", "Mean per-user rate versus array size"},
      {"quant-sweep", "Mean per-user rate versus RF or feedback bits"},
      {"coverage", "Rate coverage of a Poisson cellular network"},
  };
  for (const auto& [name, description] : simulations) {
    add_run_options(app.add_subcommand(name, description), run_args);
  }

  BoundArgs bound_args;
  auto* bounds = app.add_subcommand("bounds", "Evaluate an analytic bound");
  bounds->add_flag("--theorem1", bound_args.theorem1, "Per-user single-path rate lower bound");
  bounds->add_flag("--theorem2", bound_args.theorem2, "Quantized-codebook rate loss bound");
  bounds->add_flag("--corollary2", bound_args.corollary2, "Feedback bits for a loss target");
  bounds->add_flag("--largedim", bound_args.largedim, "Large-array rate loss bound");
  bounds->add_flag("--prop3-factor", bound_args.prop3, "Virtual-model probability factor");
  bounds->add_option("--snr-db", bound_args.snr_db, "10 log10(P / sigma^2)")->capture_default_str();
  bounds->add_option("--users", bound_args.users)->capture_default_str();
  bounds->add_option("--n-bs", bound_args.n_bs)->capture_default_str();
  bounds->add_option("--n-ms", bound_args.n_ms)->capture_default_str();
  bounds->add_option("--paths", bound_args.paths)->capture_default_str();
  bounds->add_option("--alpha-bar", bound_args.alpha_bar)->capture_default_str();
  bounds->add_option("--bb-bits", bound_args.bb_bits)->capture_default_str();
  bounds->add_option("--mu-bs", bound_args.mu_bs)->capture_default_str();
  bounds->add_option("--mu-ms", bound_args.mu_ms)->capture_default_str();
  bounds->add_option("--rf-bits-bs", bound_args.rf_bits_bs, "Derive mu-bs from a codebook");
  bounds->add_option("--rf-bits-ms", bound_args.rf_bits_ms, "Derive mu-ms from a codebook");
  bounds->add_option("--target-b", bound_args.target_b, "Loss target log2(b)")
      ->capture_default_str();
  bounds->add_option("--array", bound_args.bs_kind, "Array kind for codebooks and steering")
      ->check(CLI::IsMember({"ula", "upa"}))
      ->capture_default_str();
  bounds->add_option("--aods", bound_args.aods, "Per-user azimuth AoDs (rad)")->delimiter(',');
  bounds->add_option("--gains", bound_args.gains, "Per-user path gain magnitudes")
      ->delimiter(',');

  PresetArgs preset_args;
  auto* preset_cmd = app.add_subcommand("preset", "Print or write a built-in configuration");
  preset_cmd->add_option("name", preset_args.name, "Preset name");
  preset_cmd->add_flag("--list", preset_args.list, "List presets");
  preset_cmd->add_option("--out", preset_args.out_dir, "Write NAME.config.json here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "bounds") {
      try {
        return run_bounds(bound_args, out);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        // Inputs outside a bound's domain are user errors, not runtime faults.
        throw ConfigError("bounds", e.what());
      }
    }
    if (name == "preset") return run_preset(preset_args, out);
    return run_simulation(name, run_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (...) {
    err << "error: unknown failure\n";
    return kExitRuntime;
  }
}

}  // namespace mmhybrid::cli
