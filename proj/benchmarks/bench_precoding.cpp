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
#include <vector>

#include <benchmark/benchmark.h>

#include "mmhybrid/cellular.hpp"
#include "mmhybrid/channel.hpp"
#include "mmhybrid/codebooks.hpp"
#include "mmhybrid/harness.hpp"
#include "mmhybrid/precoding.hpp"

namespace {

using namespace mmhybrid;

std::vector<ChannelRealization> draw(int users, int paths, Rng& rng) {
  ChannelConfig cfg;
  cfg.paths = paths;
  std::vector<ChannelRealization> out;
  for (int u = 0; u < users; ++u) {
    out.push_back(sample_channel(cfg, ArrayGeometry::upa(8, 8), ArrayGeometry::upa(4, 4), rng));
  }
  return out;
}

// Exhaustive stage-1 search over a 2^bits x 2^bits codebook pair.
void BM_Stage1Search(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  Rng rng(1);
  const auto h = draw(1, 3, rng).front();
  const Codebook f = beamsteering_codebook(h.bs, bits);
  const Codebook w = beamsteering_codebook(h.ms, bits);
  for (auto _ : state) benchmark::DoNotOptimize(stage1_search(h.matrix, f.vectors(), w.vectors()));
}
BENCHMARK(BM_Stage1Search)->DenseRange(2, 8, 2);

void BM_ZfBaseband(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  Rng rng(2);
  const auto h = draw(users, 1, rng);
  const RfStage rf = design_rf_stage(h, ContinuousBeams{}, ContinuousBeams{});
  for (auto _ : state) benchmark::DoNotOptimize(zf_baseband(rf.effective, rf.f_rf));
}
BENCHMARK(BM_ZfBaseband)->Arg(2)->Arg(4)->Arg(8);

void BM_HybridPrecode(benchmark::State& state) {
  Rng rng(3);
  const auto h = draw(4, 3, rng);
  const Codebook rvq = rvq_codebook(4, 8, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hybrid_precode(h, ContinuousBeams{}, ContinuousBeams{}, rvq));
  }
}
BENCHMARK(BM_HybridPrecode);

void BM_BlockDiagonalization(benchmark::State& state) {
  Rng rng(4);
  const auto h = draw(4, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(block_diagonalization(h));
}
BENCHMARK(BM_BlockDiagonalization);

void BM_RateExperiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.snr_db_grid = {-10.0, 0.0};
  cfg.trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_rate_experiment(cfg, {1}));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_RateExperiment)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Coverage(benchmark::State& state) {
  CellularConfig cfg;
  cfg.users_per_bs = {2};
  cfg.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_coverage(cfg, {1}));
}
BENCHMARK(BM_Coverage)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
