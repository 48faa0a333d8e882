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
#include "mmhybrid/cellular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "mmhybrid/channel.hpp"
#include "mmhybrid/errors.hpp"
#include "mmhybrid/precoding.hpp"
#include "mmhybrid/rng.hpp"

namespace mmhybrid {

namespace {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Distance on the torus of side `side`.
double wrapped_distance(const Point2& a, const Point2& b, double side) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  dx = std::min(dx, side - dx);
  dy = std::min(dy, side - dy);
  return std::hypot(dx, dy);
}

struct Topology {
  std::vector<Point2> bs;
  std::vector<Point2> ms;
  std::vector<int> serving;                 // per MS
  std::vector<std::vector<int>> attached;   // per BS, random order
};

// Per-(scheme, n) pooled rates of one trial.
struct TrialRates {
  std::vector<std::vector<double>> rates;
  std::vector<long> skipped;
};

class Network {
 public:
  explicit Network(const CellularConfig& config)
      : config_(config),
        los_radius_(config.effective_los_radius()),
        snr_(std::pow(10.0, config.tx_snr_db / 10.0)) {}

  TrialRates run_trial(int trial) {
    Rng rng = make_substream(config_.seed, static_cast<std::uint64_t>(trial));
    link_seed_ = mix_seed(config_.seed ^ (static_cast<std::uint64_t>(trial) << 1 | 1u));
    topo_ = draw_topology(rng);

    const std::size_t n_cells = topo_.bs.size();
    const auto& ns = config_.users_per_bs;
    TrialRates out;
    out.rates.resize(config_.schemes.size() * ns.size());
    out.skipped.assign(out.rates.size(), 0);

    for (std::size_t si = 0; si < config_.schemes.size(); ++si) {
      for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const SchemeId scheme = config_.schemes[si];
        const int n = scheme == SchemeId::SingleUser ? 1 : ns[ni];
        // Precoders of every active cell, then the rates of their users.
        std::vector<std::optional<CellPlan>> plans(n_cells);
        long skipped = 0;
        for (std::size_t b = 0; b < n_cells; ++b) {
          if (static_cast<int>(topo_.attached[b].size()) < n) {
            ++skipped;
            continue;
          }
          try {
            plans[b] = plan_cell(static_cast<int>(b), scheme, n);
          } catch (const IllConditioned&) {
            ++skipped;
          }
        }
        auto& pool = out.rates[si * ns.size() + ni];
        for (std::size_t b = 0; b < n_cells; ++b) {
          if (!plans[b]) continue;
          for (int k = 0; k < n; ++k) pool.push_back(user_rate(plans, b, k));
        }
        out.skipped[si * ns.size() + ni] = skipped;
      }
    }
    return out;
  }

 private:
  struct CellPlan {
    std::vector<int> users;
    std::vector<CVector> combiners;
    CMatrix precoder;  // N_BS x n, unit-power columns
  };

  Topology draw_topology(Rng& rng) const {
    const double area = config_.region * config_.region;
    Topology t;
    auto scatter = [&](double density, std::vector<Point2>& pts) {
      std::poisson_distribution<long> count(density * area);
      const long k = count(rng);
      pts.resize(static_cast<std::size_t>(k));
      for (auto& p : pts) {
        p.x = uniform_real(rng, 0.0, config_.region);
        p.y = uniform_real(rng, 0.0, config_.region);
      }
    };
    scatter(config_.bs_density, t.bs);
    scatter(config_.bs_density * config_.ms_density_factor, t.ms);
    t.attached.resize(t.bs.size());
    t.serving.assign(t.ms.size(), -1);
    if (t.bs.empty()) return t;
    for (std::size_t m = 0; m < t.ms.size(); ++m) {
      int best = 0;
      double best_loss = -1.0;
      for (std::size_t b = 0; b < t.bs.size(); ++b) {
        const double gain = path_gain(wrapped_distance(t.bs[b], t.ms[m], config_.region));
        if (gain > best_loss) {
          best_loss = gain;
          best = static_cast<int>(b);
        }
      }
      t.serving[m] = best;
      t.attached[static_cast<std::size_t>(best)].push_back(static_cast<int>(m));
    }
    for (auto& users : t.attached) std::shuffle(users.begin(), users.end(), rng);
    return t;
  }

  double path_gain(double distance) const {
    const double r = std::max(distance, 1.0);
    const double exponent = distance < los_radius_ ? config_.los_exponent : config_.nlos_exponent;
    return std::pow(r, -exponent);
  }

  // Single path of link (b, m); drawn from its own substream so every scheme
  // and every n sees the same physical channel.
  Path link_path(int b, int m) const {
    const std::uint64_t index = (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint32_t>(m);
    Rng rng = make_substream(link_seed_, index);
    const double variance =
        path_gain(wrapped_distance(topo_.bs[static_cast<std::size_t>(b)],
                                   topo_.ms[static_cast<std::size_t>(m)], config_.region));
    return sample_paths(1, variance, ElevationModel::Fixed, rng).front();
  }

  CellPlan plan_cell(int b, SchemeId scheme, int n) const {
    CellPlan plan;
    const auto& attached = topo_.attached[static_cast<std::size_t>(b)];
    plan.users.assign(attached.begin(), attached.begin() + n);
    std::vector<ChannelRealization> channels;
    channels.reserve(static_cast<std::size_t>(n));
    for (int m : plan.users) {
      channels.push_back(make_channel({link_path(b, m)}, config_.bs_geometry,
                                      config_.ms_geometry));
    }
    PrecoderSolution sol;
    switch (scheme) {
      case SchemeId::Hybrid:
        sol = hybrid_precode(channels, ContinuousBeams{}, ContinuousBeams{}, PerfectFeedback{});
        break;
      case SchemeId::BeamsteeringOnly:
      case SchemeId::SingleUser:
        sol = beamsteering_only(channels, ContinuousBeams{}, ContinuousBeams{});
        break;
      case SchemeId::BlockDiagonalization:
        throw ConfigError("schemes", "block diagonalization is not supported in coverage runs");
    }
    plan.combiners = sol.combiners;
    plan.precoder = sol.effective_precoder();
    return plan;
  }

  double user_rate(const std::vector<std::optional<CellPlan>>& plans, std::size_t cell,
                   int k) const {
    const CellPlan& own = *plans[cell];
    const int m = own.users[static_cast<std::size_t>(k)];
    const CVector& w = own.combiners[static_cast<std::size_t>(k)];
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t b = 0; b < plans.size(); ++b) {
      if (!plans[b]) continue;
      const Path path = link_path(static_cast<int>(b), m);
      const CRowVector row =
          combine_paths(std::span<const Path>(&path, 1), config_.bs_geometry,
                        config_.ms_geometry, w);
      const Eigen::RowVectorXd power = (row * plans[b]->precoder).cwiseAbs2();
      const double scale = snr_ / static_cast<double>(plans[b]->users.size());
      if (b == cell) {
        signal = scale * power[k];
        interference += scale * (power.sum() - power[k]);
      } else {
        interference += scale * power.sum();
      }
    }
    return std::log2(1.0 + signal / (interference + w.squaredNorm()));
  }

  const CellularConfig& config_;
  double los_radius_;
  double snr_;
  std::uint64_t link_seed_ = 0;
  Topology topo_;
};

}  // namespace

double CellularConfig::effective_los_radius() const {
  return los_radius ? *los_radius : 0.1 / std::sqrt(bs_density);
}

void CellularConfig::validate() const {
  if (!(bs_density > 0.0)) throw ConfigError("bs_density", "must be > 0");
  if (!(ms_density_factor > 0.0)) throw ConfigError("ms_density_factor", "must be > 0");
  if (!(region > 0.0)) throw ConfigError("region", "must be > 0");
  if (bs_density * region * region < 10.0) {
    throw ConfigError("region", "expected BS count bs_density * region^2 must be >= 10");
  }
  if (!(los_exponent > 0.0)) throw ConfigError("los_exponent", "must be > 0");
  if (!(nlos_exponent > 0.0)) throw ConfigError("nlos_exponent", "must be > 0");
  if (los_radius && !(*los_radius >= 0.0)) throw ConfigError("los_radius", "must be >= 0");
  if (!std::isfinite(tx_snr_db)) throw ConfigError("tx_snr_db", "must be finite");
  if (users_per_bs.empty()) throw ConfigError("users_per_bs", "must not be empty");
  for (int n : users_per_bs) {
    if (n < 1) throw ConfigError("users_per_bs", "values must be >= 1");
    if (n > bs_geometry.size()) {
      throw ConfigError("users_per_bs", "values must not exceed the number of BS antennas");
    }
  }
  if (thresholds.empty()) throw ConfigError("thresholds", "must not be empty");
  if (schemes.empty()) throw ConfigError("schemes", "must not be empty");
  for (SchemeId s : schemes) {
    if (s == SchemeId::BlockDiagonalization) {
      throw ConfigError("schemes", "block_diagonalization is not supported in coverage runs");
    }
  }
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
}

const CoverageRow& CoverageTable::at(const std::string& scheme, int n, double eta) const {
  for (const auto& row : rows) {
    if (row.scheme == scheme && row.n == n && row.eta == eta) return row;
  }
  throw std::out_of_range("no coverage row for scheme '" + scheme + "'");
}

CoverageTable run_coverage(const CellularConfig& config, const RunOptions& options) {
  config.validate();
  std::vector<TrialRates> results(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, options.workers, [&](int t) {
    results[static_cast<std::size_t>(t)] = Network(config).run_trial(t);
  });

  const auto& ns = config.users_per_bs;
  CoverageTable table;
  for (std::size_t si = 0; si < config.schemes.size(); ++si) {
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const std::size_t slot = si * ns.size() + ni;
      std::vector<double> pooled;
      long skipped = 0;
      for (const auto& r : results) {
        pooled.insert(pooled.end(), r.rates[slot].begin(), r.rates[slot].end());
        skipped += r.skipped[slot];
      }
      std::sort(pooled.begin(), pooled.end());
      for (double eta : config.thresholds) {
        CoverageRow row;
        row.scheme = to_string(config.schemes[si]);
        row.n = ns[ni];
        row.eta = eta;
        row.trials = config.trials;
        row.samples = static_cast<long>(pooled.size());
        row.skipped_cells = skipped;
        if (!pooled.empty()) {
          const auto below = std::lower_bound(pooled.begin(), pooled.end(), eta) - pooled.begin();
          row.coverage = static_cast<double>(static_cast<long>(pooled.size()) - below) /
                         static_cast<double>(pooled.size());
        }
        table.rows.push_back(row);
      }
    }
  }
  return table;
}

void write_csv(std::ostream& out, const CoverageTable& table) {
  out << "scheme,n,eta,coverage,trials,samples,skipped_cells\n";
  const auto old_precision = out.precision(12);
  for (const auto& r : table.rows) {
    out << r.scheme << ',' << r.n << ',' << r.eta << ',' << r.coverage << ',' << r.trials << ','
        << r.samples << ',' << r.skipped_cells << '\n';
  }
  out.precision(old_precision);
}

}  // namespace mmhybrid
