// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ensembles.hpp"
#include "fracnash/errors.hpp"
#include "fracnash/log_sobolev.hpp"
#include "fracnash/operator_gallery.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fracnash;
using spectral::Vector;

TEST_CASE("dyadic truncation") {
  Vector f(4);
  f << 0.0, 1.0, 3.0, 10.0;
  Vector want(4);
  want << 0.0, 0.0, 1.0, 2.0;
  CHECK((logsob::truncate(f, 1) - want).cwiseAbs().maxCoeff() == 0.0);
  Vector neg(2);
  neg << 1.0, -1.0;
  CHECK_THROWS_AS(logsob::truncate(neg, 0), InvalidArgument);
}

TEST_CASE("slices rebuild the function") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  Vector f(20);
  for (auto& v : f) v = u(rng);
  f[3] = 0.0;
  const Vector r = logsob::reconstruct(f, -20, 20);
  CHECK((r - f).cwiseAbs().maxCoeff() <= std::ldexp(1.0, -20));
  const auto w = logsob::slice_window(f);
  CHECK(std::ldexp(1.0, w.k_hi) >= f.maxCoeff());
  // Below the window every slice is 2^k on the support.
  const Vector low = logsob::truncate(f, w.k_lo - 1);
  for (Eigen::Index i = 0; i < f.size(); ++i)
    CHECK(low[i] == (f[i] > 0 ? std::ldexp(1.0, w.k_lo - 1) : 0.0));
}

TEST_CASE("slice energies never exceed the full energy") {
  const auto spec = gallery::GeneratorSpec::path(15);
  const auto ens = ensembles::spiky_nonneg(15, 200, 8);
  for (const auto& f0 : ens.samples) {
    const Vector f = 37.0 * f0;
    const auto full = logsob::truncation_energy_check(spec, f);
    CHECK(full.slack >= -1e-12);
    CHECK(full.energy == doctest::Approx(gallery::dirichlet_energy(spec, f)));
    const auto part = logsob::truncation_energy_check(spec, f, std::make_pair(full.k_lo, full.k_hi));
    CHECK(part.slice_energy <= full.slice_energy + 1e-12);
  }
}

TEST_CASE("single level step is tight for indicators") {
  const auto space = spectral::MeasureSpace::probability(8);
  Vector f = Vector::Zero(8);
  f[0] = 1.0;
  CHECK(logsob::markov_step_slack(f, space) >= -1e-14);
}

TEST_CASE("entropy of a two-point function") {
  const auto space = spectral::MeasureSpace::probability(2);
  Vector f(2);
  f << 1.0, 3.0;
  const double norm = std::sqrt(5.0);
  const double want = 0.5 * (std::log(1.0 / norm) + 9.0 * std::log(3.0 / norm));
  CHECK(logsob::entropy(f, space) == doctest::Approx(want).epsilon(1e-14));
  CHECK(logsob::entropy(Vector::Constant(2, 4.0), space) == doctest::Approx(0.0));
}

TEST_CASE("calibrated log-Sobolev constant closes every sample") {
  const auto spec = gallery::GeneratorSpec::cycle(10);
  const auto op = spectral::eigendecompose(gallery::generator_matrix(spec),
                                           spectral::MeasureSpace::probability(10));
  ensembles::EnsembleSpec es;
  es.per_family = 50;
  es.seed = 12;
  const auto ens = ensembles::generate(op, es);
  for (double alpha : {0.5, 1.0}) {
    const double c = logsob::calibrate_logsob_constant(op, alpha, ens);
    CHECK(c > 0.0);
    CHECK(logsob::logsob_check(op, alpha, c, ens).slack >= -1e-12);
    CHECK(logsob::logsob_check(op, alpha, 0.5 * c, ens).slack < 0.0);
  }
}
