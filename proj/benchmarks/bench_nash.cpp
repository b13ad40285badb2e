// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ensembles.hpp"
#include "fracnash/nash_toolkit.hpp"
#include "fracnash/operator_gallery.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace fracnash;

static void BM_RateFromProfile(benchmark::State& state) {
  const auto p = state.range(0) == 0 ? nash::DecayProfile::power(2.0)
                                     : nash::DecayProfile::stretched(1.0);
  double lx = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nash::rate_from_profile_log(p, lx));
    lx = lx > 100.0 ? 1.0 : lx * 1.1;
  }
}
BENCHMARK(BM_RateFromProfile)->Arg(0)->Arg(1);

static void BM_UltracontractivityFromNash(benchmark::State& state) {
  const auto b = nash::RateFunction::power_law(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(nash::ultracontractivity_from_nash(b, 0.1));
}
BENCHMARK(BM_UltracontractivityFromNash)->Unit(benchmark::kMicrosecond);

static void BM_NashRatio(benchmark::State& state) {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(32));
  const auto ens = ensembles::spiky_nonneg(32, static_cast<std::size_t>(state.range(0)), 1);
  const auto b = nash::spectral_gap_rate(op);
  for (auto _ : state) benchmark::DoNotOptimize(nash::nash_ratio(op, b, 0.5, ens));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NashRatio)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
