// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ou_model.hpp"
#include "fracnash/torus_product.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace fracnash;

static void BM_LogProductSum(benchmark::State& state) {
  const double s = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(torus::log_product_sum(1.0, 1e12, s));
}
BENCHMARK(BM_LogProductSum)->DenseRange(1, 5);

static void BM_TailRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(torus::tail_rule_truncation(1.0, 1e-4, 1e-10));
}
BENCHMARK(BM_TailRule)->Unit(benchmark::kMicrosecond);

static void BM_GaussHermite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ou::gauss_hermite(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussHermite)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_OuNorms(benchmark::State& state) {
  const ou::HermiteModel model(static_cast<int>(state.range(0)));
  const auto c = ou::exponential_candidate(model.n(), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ou::mixed_norm(model, c, 4.0));
    benchmark::DoNotOptimize(ou::mixed_norm(model, c, 1.0));
  }
}
BENCHMARK(BM_OuNorms)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
