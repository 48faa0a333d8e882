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
#include "mmhybrid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "mmhybrid/codebooks.hpp"
#include "mmhybrid/errors.hpp"
#include "mmhybrid/metrics.hpp"
#include "mmhybrid/precoding.hpp"

namespace mmhybrid {

namespace {

constexpr int kMaxBits = 24;

const char* const kUnquantized = "hybrid_unquantized";
const char* const kLoss = "quantization_loss";

// Everything that changes between the points of a sweep.
struct Point {
  double param = 0.0;
  ArrayGeometry bs;
  ArrayGeometry ms;
  std::optional<int> rf_bits_bs;
  std::optional<int> rf_bits_ms;
  std::optional<int> bb_bits;
};

struct Extras {
  bool unquantized = false;  // adds hybrid_unquantized and quantization_loss
  bool gamma = false;        // collects strongest virtual gains
};

struct TrialOutcome {
  // values[slot * n_snr + s]; empty optional marks an excluded trial.
  std::vector<std::optional<double>> values;
  std::vector<double> gamma1_power;
};

BeamSource beam_source(const ArrayGeometry& geometry, const std::optional<int>& bits) {
  if (!bits) return ContinuousBeams{};
  return beamsteering_codebook(geometry, *bits);
}

// Mean over users of the rate at every SNR, computing the gain matrix once.
std::vector<double> mean_rates(std::span<const ChannelRealization> channels,
                               const PrecoderSolution& sol, std::span<const double> snrs) {
  const int users = sol.users();
  const CMatrix f_eff = sol.effective_precoder();
  Eigen::MatrixXd power(users, users);
  RVector noise(users);
  for (int u = 0; u < users; ++u) {
    const CVector& w = sol.combiners[static_cast<std::size_t>(u)];
    power.row(u) = (w.adjoint() * channels[static_cast<std::size_t>(u)].matrix * f_eff)
                       .cwiseAbs2();
    noise[u] = w.squaredNorm();
  }
  std::vector<double> out;
  out.reserve(snrs.size());
  for (double snr : snrs) {
    const double scale = snr / users;
    double sum = 0.0;
    for (int u = 0; u < users; ++u) {
      const double signal = scale * power(u, u);
      const double interference = scale * (power.row(u).sum() - power(u, u));
      const double denom = interference + noise[u];
      sum += denom > 0.0 ? std::log2(1.0 + signal / denom) : 0.0;
    }
    out.push_back(sum / users);
  }
  return out;
}

std::vector<double> single_user_rates(const std::vector<double>& objective,
                                      std::span<const double> snrs) {
  const auto users = static_cast<double>(objective.size());
  std::vector<double> out;
  for (double snr : snrs) {
    double sum = 0.0;
    for (double g : objective) sum += std::log2(1.0 + snr / users * g * g);
    out.push_back(sum / users);
  }
  return out;
}

class Runner {
 public:
  Runner(const ExperimentConfig& config, const RunOptions& options, Extras extras)
      : config_(config), options_(options), extras_(extras) {
    for (double db : config.snr_db_grid) {
      snrs_.push_back(plotted_snr_to_linear(db, config.users, config.channel.gain_variance));
    }
    for (SchemeId s : config.schemes) labels_.push_back(to_string(s));
    if (extras_.unquantized) {
      labels_.emplace_back(kUnquantized);
      labels_.emplace_back(kLoss);
    }
  }

  // Simulates one sweep point and appends its rows. Returns the pooled
  // strongest-virtual-gain samples when requested.
  std::vector<double> run_point(const Point& point, RateTable& table) const {
    if (config_.users > point.bs.size()) {
      throw ConfigError("users", "must not exceed the number of BS antennas");
    }
    const BeamSource bs_beams = beam_source(point.bs, point.rf_bits_bs);
    const BeamSource ms_beams = beam_source(point.ms, point.rf_bits_ms);

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config_.trials));
    parallel_for(config_.trials, options_.workers, [&](int t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(point, bs_beams, ms_beams, t);
    });

    const std::size_t n_snr = snrs_.size();
    for (std::size_t s = 0; s < n_snr; ++s) {
      for (std::size_t slot = 0; slot < labels_.size(); ++slot) {
        std::vector<double> samples;
        samples.reserve(outcomes.size());
        for (const auto& o : outcomes) {
          if (const auto& v = o.values[slot * n_snr + s]) samples.push_back(*v);
        }
        table.rows.push_back(summarize(labels_[slot], point.param, config_.snr_db_grid[s],
                                       samples));
      }
    }
    std::vector<double> gamma;
    if (extras_.gamma) {
      for (const auto& o : outcomes) {
        gamma.insert(gamma.end(), o.gamma1_power.begin(), o.gamma1_power.end());
      }
    }
    return gamma;
  }

  const std::vector<double>& snrs() const { return snrs_; }

 private:
  TrialOutcome run_trial(const Point& point, const BeamSource& bs_beams,
                         const BeamSource& ms_beams, int t) const {
    Rng rng = make_substream(config_.seed, static_cast<std::uint64_t>(t));
    std::vector<ChannelRealization> channels;
    channels.reserve(static_cast<std::size_t>(config_.users));
    for (int u = 0; u < config_.users; ++u) {
      channels.push_back(sample_channel(config_.channel, point.bs, point.ms, rng));
    }
    Feedback feedback = PerfectFeedback{};
    if (point.bb_bits) feedback = rvq_codebook(config_.users, *point.bb_bits, rng);

    const std::size_t n_snr = snrs_.size();
    TrialOutcome out;
    out.values.resize(labels_.size() * n_snr);
    auto store = [&](std::size_t slot, const std::vector<double>& rates) {
      for (std::size_t s = 0; s < n_snr; ++s) out.values[slot * n_snr + s] = rates[s];
    };

    const RfStage rf = design_rf_stage(channels, bs_beams, ms_beams);
    std::optional<std::vector<double>> hybrid;
    for (std::size_t slot = 0; slot < config_.schemes.size(); ++slot) {
      switch (config_.schemes[slot]) {
        case SchemeId::Hybrid:
          try {
            hybrid = mean_rates(channels, hybrid_from_rf(rf, feedback), snrs_);
            store(slot, *hybrid);
          } catch (const IllConditioned&) {
          }
          break;
        case SchemeId::BeamsteeringOnly:
          store(slot, mean_rates(channels, beamsteering_from_rf(rf), snrs_));
          break;
        case SchemeId::BlockDiagonalization:
          try {
            store(slot, mean_rates(channels, block_diagonalization(channels), snrs_));
          } catch (const Infeasible&) {
          }
          break;
        case SchemeId::SingleUser:
          store(slot, single_user_rates(rf.objective, snrs_));
          break;
      }
    }

    if (extras_.unquantized) {
      const std::size_t base = config_.schemes.size();
      try {
        const RfStage ideal = design_rf_stage(channels, ContinuousBeams{}, ContinuousBeams{});
        const auto reference = mean_rates(channels, hybrid_from_rf(ideal, PerfectFeedback{}),
                                          snrs_);
        store(base, reference);
        if (!hybrid) {
          try {
            hybrid = mean_rates(channels, hybrid_from_rf(rf, feedback), snrs_);
          } catch (const IllConditioned&) {
          }
        }
        if (hybrid) {
          std::vector<double> loss(n_snr);
          for (std::size_t s = 0; s < n_snr; ++s) loss[s] = reference[s] - (*hybrid)[s];
          store(base + 1, loss);
        }
      } catch (const IllConditioned&) {
      }
    }

    if (extras_.gamma) {
      const double nn = static_cast<double>(point.bs.size()) * point.ms.size();
      for (const auto& ch : channels) {
        const double peak = to_virtual(ch).cwiseAbs2().maxCoeff();
        out.gamma1_power.push_back(peak * config_.channel.paths / nn);
      }
    }
    return out;
  }

  RateRow summarize(const std::string& label, double param, double snr_db,
                    const std::vector<double>& samples) const {
    RateRow row;
    row.scheme = label;
    row.sweep_param = param;
    row.snr_db = snr_db;
    row.trials = static_cast<int>(samples.size());
    row.excluded = config_.trials - row.trials;
    if (samples.empty()) return row;
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    row.mean_rate = mean;
    if (samples.size() > 1) {
      double ss = 0.0;
      for (double v : samples) ss += (v - mean) * (v - mean);
      const double var = ss / static_cast<double>(samples.size() - 1);
      row.std_err = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return row;
  }

  const ExperimentConfig& config_;
  const RunOptions& options_;
  Extras extras_;
  std::vector<double> snrs_;
  std::vector<std::string> labels_;
};

Point base_point(const ExperimentConfig& config) {
  return Point{0.0,
               config.bs_geometry,
               config.ms_geometry,
               config.rf_bits_bs,
               config.rf_bits_ms,
               config.bb_bits};
}

ArrayGeometry resized(const ArrayGeometry& like, int elements) {
  if (like.kind() == ArrayKind::ULA) return ArrayGeometry::ula(elements, like.spacing());
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(elements))));
  if (side * side != elements) {
    throw ConfigError("sweep.values", "planar array sizes must be perfect squares, got " +
                                          std::to_string(elements));
  }
  return ArrayGeometry::upa(side, side, like.spacing());
}

void require_sweep(const Sweep& sweep, std::initializer_list<SweepKind> allowed) {
  if (std::find(allowed.begin(), allowed.end(), sweep.kind) == allowed.end()) {
    throw ConfigError("sweep.kind", "'" + to_string(sweep.kind) + "' is not valid here");
  }
  if (sweep.values.empty()) throw ConfigError("sweep.values", "must not be empty");
}

// Strongest correlation floor of an optional RF codebook; 1 when continuous.
double correlation_floor(const ArrayGeometry& geometry, const std::optional<int>& bits) {
  if (!bits) return 1.0;
  const Codebook codebook = beamsteering_codebook(geometry, *bits);
  const int grid = std::max(kDefaultProbeGridSize, 10 * codebook.size());
  return min_max_correlation(codebook, grid);
}

}  // namespace

std::string to_string(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::Hybrid: return "hybrid";
    case SchemeId::BeamsteeringOnly: return "beamsteering";
    case SchemeId::BlockDiagonalization: return "block_diagonalization";
    case SchemeId::SingleUser: return "single_user";
  }
  return "unknown";
}

SchemeId scheme_from_string(const std::string& name) {
  for (SchemeId s : {SchemeId::Hybrid, SchemeId::BeamsteeringOnly,
                     SchemeId::BlockDiagonalization, SchemeId::SingleUser}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::None: return "none";
    case SweepKind::BsAntennas: return "n_bs";
    case SweepKind::MsAntennas: return "n_ms";
    case SweepKind::BothAntennas: return "n_both";
    case SweepKind::BbBits: return "bb_bits";
    case SweepKind::RfBits: return "rf_bits";
  }
  return "unknown";
}

SweepKind sweep_kind_from_string(const std::string& name) {
  for (SweepKind k : {SweepKind::None, SweepKind::BsAntennas, SweepKind::MsAntennas,
                      SweepKind::BothAntennas, SweepKind::BbBits, SweepKind::RfBits}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown sweep kind '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (name.empty()) throw ConfigError("name", "must not be empty");
  if (users < 1) throw ConfigError("users", "must be >= 1");
  if (users > bs_geometry.size()) {
    throw ConfigError("users", "must not exceed the number of BS antennas");
  }
  channel.validate();
  if (snr_db_grid.empty()) throw ConfigError("snr_db", "must not be empty");
  for (double v : snr_db_grid) {
    if (!std::isfinite(v)) throw ConfigError("snr_db", "values must be finite");
  }
  if (schemes.empty()) throw ConfigError("schemes", "must not be empty");
  auto check_bits = [](const char* field, const std::optional<int>& bits) {
    if (bits && (*bits < 0 || *bits > kMaxBits)) {
      throw ConfigError(field, "must be in [0, 24]");
    }
  };
  check_bits("rf_bits_bs", rf_bits_bs);
  check_bits("rf_bits_ms", rf_bits_ms);
  check_bits("bb_bits", bb_bits);
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (sweep.kind != SweepKind::None) {
    if (sweep.values.empty()) throw ConfigError("sweep.values", "must not be empty");
    const bool bits = sweep.kind == SweepKind::BbBits || sweep.kind == SweepKind::RfBits;
    for (int v : sweep.values) {
      if (bits ? (v < 0 || v > kMaxBits) : v < 1) {
        throw ConfigError("sweep.values", "value " + std::to_string(v) + " out of range");
      }
    }
  }
}

const RateRow& RateTable::at(const std::string& scheme, double snr_db, double sweep_param) const {
  for (const auto& row : rows) {
    if (row.scheme == scheme && row.snr_db == snr_db && row.sweep_param == sweep_param) {
      return row;
    }
  }
  throw std::out_of_range("no row for scheme '" + scheme + "'");
}

double plotted_snr_to_linear(double snr_db, int users, double alpha_bar) {
  return users * std::pow(10.0, snr_db / 10.0) / alpha_bar;
}

RateTable run_rate_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  RateTable table;
  Runner(config, options, {}).run_point(base_point(config), table);
  return table;
}

RateTable run_antenna_sweep(const ExperimentConfig& config, const Sweep& sweep,
                            const RunOptions& options) {
  config.validate();
  require_sweep(sweep, {SweepKind::BsAntennas, SweepKind::MsAntennas, SweepKind::BothAntennas});
  const Runner runner(config, options, Extras{false, sweep.bounds});
  RateTable table;
  table.sweep_name = to_string(sweep.kind);
  for (int n : sweep.values) {
    Point point = base_point(config);
    point.param = n;
    if (sweep.kind != SweepKind::MsAntennas) point.bs = resized(config.bs_geometry, n);
    if (sweep.kind != SweepKind::BsAntennas) point.ms = resized(config.ms_geometry, n);
    const std::vector<double> gamma = runner.run_point(point, table);
    if (!sweep.bounds) continue;
    for (std::size_t s = 0; s < runner.snrs().size(); ++s) {
      const Prop3Bound bound = prop3_bound(point.bs.size(), point.ms.size(),
                                           config.channel.paths, config.users,
                                           runner.snrs()[s], gamma);
      RateRow row;
      row.scheme = "prop3_bound";
      row.sweep_param = n;
      row.snr_db = config.snr_db_grid[s];
      row.mean_rate = bound.value;
      row.trials = config.trials;
      table.rows.push_back(row);
    }
  }
  return table;
}

RateTable run_quantization_sweep(const ExperimentConfig& config, const Sweep& sweep,
                                 const RunOptions& options) {
  config.validate();
  require_sweep(sweep, {SweepKind::BbBits, SweepKind::RfBits});
  const Runner runner(config, options, Extras{true, false});
  RateTable table;
  table.sweep_name = to_string(sweep.kind);
  for (int bits : sweep.values) {
    Point point = base_point(config);
    point.param = bits;
    if (sweep.kind == SweepKind::BbBits) {
      point.bb_bits = bits;
    } else {
      point.rf_bits_bs = bits;
      point.rf_bits_ms = bits;
    }
    runner.run_point(point, table);
    if (!sweep.bounds) continue;
    const double mu_bs = correlation_floor(point.bs, point.rf_bits_bs);
    const double mu_ms = correlation_floor(point.ms, point.rf_bits_ms);
    for (std::size_t s = 0; s < runner.snrs().size(); ++s) {
      RateRow row;
      row.scheme = "theorem2_bound";
      row.sweep_param = bits;
      row.snr_db = config.snr_db_grid[s];
      // Perfect feedback leaves only the RF correlation term.
      const double bb = point.bb_bits ? *point.bb_bits : std::numeric_limits<double>::infinity();
      row.mean_rate = theorem2_loss_bound(runner.snrs()[s], config.users, point.bs.size(),
                                          point.ms.size(), config.channel.gain_variance, bb,
                                          mu_bs, mu_ms);
      row.trials = config.trials;
      table.rows.push_back(row);
    }
  }
  return table;
}

RateTable run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  switch (config.sweep.kind) {
    case SweepKind::None: return run_rate_experiment(config, options);
    case SweepKind::BsAntennas:
    case SweepKind::MsAntennas:
    case SweepKind::BothAntennas: return run_antenna_sweep(config, config.sweep, options);
    case SweepKind::BbBits:
    case SweepKind::RfBits: return run_quantization_sweep(config, config.sweep, options);
  }
  throw std::logic_error("unhandled sweep kind");
}

void write_csv(std::ostream& out, const RateTable& table) {
  out << "scheme,sweep_param,snr_db,mean_rate,std_err,trials,excluded\n";
  const auto old_precision = out.precision(12);
  for (const auto& r : table.rows) {
    out << r.scheme << ',' << r.sweep_param << ',' << r.snr_db << ',' << r.mean_rate << ','
        << r.std_err << ',' << r.trials << ',' << r.excluded << '\n';
  }
  out.precision(old_precision);
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mmhybrid
