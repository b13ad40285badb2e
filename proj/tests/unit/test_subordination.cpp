// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/errors.hpp"
#include "fracnash/operator_gallery.hpp"
#include "fracnash/subordination.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fracnash;
using spectral::Matrix;
using spectral::Vector;
using subordination::StableSubordinator;

namespace {

spectral::SpectralOperator scalar_op(double lambda) {
  return gallery::build(gallery::GeneratorSpec::diagonal({lambda}));
}

// Trapezoid in u = log s on a wide window.
template <class F>
double integrate_log_scale(F&& f, double lo = -30.0, double hi = 30.0, int n = 24000) {
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = std::exp(lo + i * h);
    sum += (i == 0 || i == n ? 0.5 : 1.0) * f(s) * s;
  }
  return sum * h;
}

}  // namespace

TEST_CASE("Levy kernel at alpha = 1/2") {
  const StableSubordinator sub(0.5, 1.0);
  CHECK(subordination::stable_density(sub, 1.0) ==
        doctest::Approx(std::exp(-0.25) / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
  const StableSubordinator sub3(0.5, 3.0);
  const double s = 2.0;
  CHECK(subordination::stable_density(sub3, s) ==
        doctest::Approx(3.0 / (2.0 * std::sqrt(std::numbers::pi)) * std::pow(s, -1.5) *
                        std::exp(-9.0 / (4.0 * s)))
            .epsilon(1e-13));
}

TEST_CASE("densities are probability densities") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    const StableSubordinator sub(alpha, 1.0);
    // P(S > s) ~ s^{-alpha}: the window must reach far to the right.
    const double mass =
        integrate_log_scale([&](double s) { return subordination::stable_density(sub, s); },
                            -30.0, 200.0, 6000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("time scaling of the stable law") {
  for (double alpha : {0.3, 0.6, 0.8}) {
    const double t = 2.5;
    const StableSubordinator sub(alpha, t);
    const double c = std::pow(t, -1.0 / alpha);
    for (double s : {0.1, 1.0, 7.0}) {
      CHECK(subordination::stable_density(sub, s) ==
            doctest::Approx(c * subordination::standard_density(alpha, s * c)).epsilon(1e-10));
    }
  }
}

TEST_CASE("Laplace transforms against the closed form") {
  CHECK(subordination::laplace_check(StableSubordinator(0.5, 1.0), 1.0) <= 1e-8);
  CHECK(subordination::laplace_transform(StableSubordinator(0.7, 1.0), 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(subordination::laplace_check(StableSubordinator(0.3, 2.0), 5.0) <= 1e-6);
  // Near lambda = 0 the transform tends to the total mass.
  CHECK(subordination::laplace_check(StableSubordinator(0.4, 1.0), 1e-9) <= 1e-6);
  CHECK(subordination::laplace_transform(StableSubordinator(0.4, 1.0), 1e-30) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("subordinated scalar semigroups") {
  const auto one = subordination::subordinate_semigroup(scalar_op(1.0), 0.5, 2.0);
  CHECK(one.matrix(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
  const auto zero = subordination::subordinate_semigroup(scalar_op(0.0), 0.7, 3.0);
  CHECK(zero.matrix(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  const auto pois = subordination::poisson_semigroup(scalar_op(4.0), 1.0);
  CHECK(pois.matrix(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("quadrature route matches the spectral route on a cycle") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(16));
  const auto quad = subordination::subordinate_semigroup(op, 0.5, 1.0);
  const Matrix ref = subordination::spectral_fractional_semigroup(op, 0.5, 1.0);
  CHECK((quad.matrix - ref).cwiseAbs().maxCoeff() <= 1e-6);
  const auto q7 = subordination::subordinate_semigroup(op, 0.7, 0.3);
  CHECK((q7.matrix - subordination::spectral_fractional_semigroup(op, 0.7, 0.3))
            .cwiseAbs()
            .maxCoeff() <= 1e-6);
}

TEST_CASE("Poisson semigroup law and L1 contraction") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(8));
  const Matrix p1 = subordination::poisson_semigroup(op, 0.4).matrix;
  const Matrix p2 = subordination::poisson_semigroup(op, 0.9).matrix;
  const Matrix p3 = subordination::poisson_semigroup(op, 1.3).matrix;
  CHECK((p1 * p2 - p3).cwiseAbs().maxCoeff() <= 1e-8);
  // Column sums of a Markov kernel on counting measure are one.
  const Matrix t = subordination::subordinate_semigroup(op, 0.3, 0.5).matrix;
  Vector f(8);
  f << 1, -2, 0.5, 0, 3, -1, 0.25, 2;
  CHECK((t * f).lpNorm<1>() <= f.lpNorm<1>() * (1 + 1e-10));
  CHECK(t.minCoeff() >= -1e-10);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(StableSubordinator(1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(StableSubordinator(0.5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(subordination::stable_density(StableSubordinator(0.5, 1.0), 0.0),
                  InvalidArgument);
  CHECK_THROWS_AS(subordination::laplace_check(StableSubordinator(0.5, 1.0), -1.0),
                  InvalidArgument);
}

TEST_CASE("node cap surfaces the achieved error") {
  subordination::RuleOptions opts;
  opts.tolerance = 1e-15;
  opts.max_nodes = 16;
  const double probes[] = {1.0};
  try {
    (void)subordination::subordination_rule(StableSubordinator(0.7, 1.0), probes, opts);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.nodes() > 0);
    CHECK(e.achieved_error() > 0.0);
  }
}
