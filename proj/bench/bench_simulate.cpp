// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernel vs the OpenMP estimator on identical workloads.

#include <benchmark/benchmark.h>

#include "ccr/simulate.hpp"

namespace {

ccr::SystemConfig config(int m, ccr::LinkCase link) {
  ccr::SystemConfig cfg;
  cfg.num_users = m;
  cfg.link = link;
  cfg.gamma_p = 50.0;
  cfg.rate = 0.5;
  cfg.zeta = 0.5;
  return cfg;
}

constexpr std::int64_t kTrials = 32 * ccr::kBlockTrials;

void BM_Serial(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)), ccr::LinkCase::DirectLink);
  for (auto _ : state) benchmark::DoNotOptimize(ccr::estimate_outage_serial(cfg, kTrials, 1));
  state.SetItemsProcessed(state.iterations() * kTrials);
}

void BM_Parallel(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)), ccr::LinkCase::DirectLink);
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ccr::estimate_outage(cfg, kTrials, 1, workers));
  state.SetItemsProcessed(state.iterations() * kTrials);
}

void BM_ParallelNoDirect(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)), ccr::LinkCase::NoDirectLink);
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ccr::estimate_outage(cfg, kTrials, 1, workers));
  state.SetItemsProcessed(state.iterations() * kTrials);
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{3, 6, 10}, {1, 2, 4, 8}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelNoDirect)->ArgsProduct({{6}, {1, 4}})->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
