// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/operator_gallery.hpp"
#include "fracnash/spectral_core.hpp"
#include "fracnash/subordination.hpp"

#include <benchmark/benchmark.h>

using namespace fracnash;

static void BM_EigendecomposeCycle(benchmark::State& state) {
  const auto spec = gallery::GeneratorSpec::cycle(static_cast<int>(state.range(0)));
  const auto m = gallery::generator_matrix(spec);
  const auto space = gallery::measure(spec);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::eigendecompose(m, space));
}
BENCHMARK(BM_EigendecomposeCycle)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

static void BM_HeatSemigroup(benchmark::State& state) {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::heat_semigroup(op, 0.5));
}
BENCHMARK(BM_HeatSemigroup)->Arg(64)->Arg(256);

static void BM_SubordinationRule(benchmark::State& state) {
  const double alpha = state.range(0) / 10.0;
  const double probes[] = {0.1, 1.0, 10.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        subordination::subordination_rule(subordination::StableSubordinator(alpha, 1.0), probes));
}
BENCHMARK(BM_SubordinationRule)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_SubordinateSemigroup(benchmark::State& state) {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(64));
  for (auto _ : state) benchmark::DoNotOptimize(subordination::subordinate_semigroup(op, 0.7, 1.0));
}
BENCHMARK(BM_SubordinateSemigroup)->Unit(benchmark::kMillisecond);
