// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ensembles.hpp"
#include "fracnash/errors.hpp"
#include "fracnash/nash_toolkit.hpp"
#include "fracnash/operator_gallery.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

using namespace fracnash;
using nash::DecayProfile;
using nash::RateFunction;
using spectral::Vector;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / double(n - 1));
  return g;
}

}  // namespace

TEST_CASE("rate of a polynomial profile") {
  for (double n : {1.0, 2.0, 3.0, 4.0}) {
    const auto p = DecayProfile::power(n);
    for (double x : {std::exp(2.0), std::exp(5.0), 1e6}) {
      const double want = n / (2.0 * std::numbers::e) * std::pow(x, 2.0 / n);
      CHECK(nash::rate_from_profile(p, x) == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("rate of a stretched-exponential profile") {
  for (double g : {0.5, 1.0, 2.0}) {
    const auto p = DecayProfile::stretched(g);
    for (double lx : {2.0, 10.0, 50.0}) {
      const double want = g * std::pow(1.0 + g, -(1.0 + 1.0 / g)) * std::pow(lx, 1.0 + 1.0 / g);
      CHECK(nash::rate_from_profile_log(p, lx) == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("rates far beyond double range stay finite") {
  const auto p = DecayProfile::stretched(1.0);
  const double lx = 5000.0;  // x = e^5000
  CHECK(nash::rate_from_profile_log(p, lx) == doctest::Approx(0.25 * lx * lx).epsilon(1e-6));
}

TEST_CASE("bounded-above profiles have no rate") {
  CHECK_THROWS_AS(nash::rate_from_profile(DecayProfile::exponential(1.0), 10.0), NumericalError);
}

TEST_CASE("inverse profile and Theta") {
  const auto p = DecayProfile::power(3.0);
  for (double x : {0.5, 2.0, 40.0}) {
    CHECK(nash::inverse_profile(p, x) == doctest::Approx(std::pow(x, -2.0 / 3.0)).epsilon(1e-9));
    CHECK(nash::theta_from_profile(p, x) == doctest::Approx(1.5 * std::pow(x, 5.0 / 3.0)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(nash::theta_from_profile(DecayProfile::exponential(), 2.0), InvalidArgument);
}

TEST_CASE("doubling constants") {
  const auto grid = log_grid(1e-3, 1e3, 1000);
  CHECK(nash::check_condition_D(DecayProfile::power(2.0), grid) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(nash::check_condition_D(DecayProfile::stretched(1.0), grid) ==
        doctest::Approx(0.25).epsilon(1e-3));
  CHECK(nash::check_condition_D(DecayProfile::stretched(3.0), grid) ==
        doctest::Approx(1.0 / 16).epsilon(1e-3));
}

TEST_CASE("profile equivalence picks the constant nearest one") {
  const auto grid = log_grid(1e-2, 1e2, 200);
  const auto eq = nash::profile_equivalence(DecayProfile::power(2.0, 3.0), DecayProfile::power(2.0),
                                            grid);
  REQUIRE(eq.has_value());
  CHECK(eq->c2 == doctest::Approx(1.0));
  CHECK(eq->c1 == doctest::Approx(3.0).epsilon(1e-9));
  // t^{-1} is not dominated by a multiple of e^{-t}.
  CHECK_FALSE(nash::profile_equivalence(DecayProfile::power(2.0), DecayProfile::exponential(), grid)
                  .has_value());
}

TEST_CASE("rate function combinators") {
  const auto b = RateFunction::power_law(2.0);  // x / e
  CHECK(b(std::numbers::e) == doctest::Approx(1.0));
  CHECK(b.dilated(2.0)(std::numbers::e) == doctest::Approx(2.0));
  CHECK(b.pow(0.5)(4.0 * std::numbers::e) == doctest::Approx(2.0));
  CHECK(b.scaled(3.0)(std::numbers::e) == doctest::Approx(3.0));
  const auto s = RateFunction::step({1.0, 2.0}, {0.5, 1.5});
  CHECK(s(0.1) == doctest::Approx(0.5));
  CHECK(s(1.5) == doctest::Approx(0.5));
  CHECK(s(2.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(RateFunction::step({1.0, 2.0}, {2.0, 1.0}), InvalidArgument);
  CHECK(RateFunction::log_power(2.0, 1.5)(std::exp(4.0)) == doctest::Approx(16.0));
}

TEST_CASE("identity generator with B = 1 has ratio exactly one") {
  const auto op = gallery::build(gallery::GeneratorSpec::diagonal(std::vector<double>(6, 1.0)));
  ensembles::EnsembleSpec es;
  es.per_family = 20;
  es.seed = 3;
  const auto cert = nash::nash_ratio(op, RateFunction::constant(1.0), 1.0,
                                     ensembles::generate(op, es));
  CHECK(cert.scored == 80);
  CHECK(cert.ratio_infimum == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(cert.to_text().find("ratio") != std::string::npos);
}

TEST_CASE("spectral gap rate is a Nash rate on a cycle") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(20));
  ensembles::EnsembleSpec es;
  es.per_family = 100;
  es.seed = 9;
  const auto cert = nash::nash_ratio(op, nash::spectral_gap_rate(op), 1.0, ensembles::generate(op, es));
  CHECK(cert.ratio_infimum >= 1.0 - 1e-12);
}

TEST_CASE("integral inequality is an equality on one point") {
  const spectral::SpectralOperator point(spectral::MeasureSpace::uniform(1),
                                         Vector::Constant(1, 2.0), spectral::Matrix::Identity(1, 1));
  const double grid[] = {0.1, 1.0, 10.0};
  const auto r = nash::halfpower_integral_check(point, RateFunction::constant(2.0), Vector::Ones(1),
                                                100.0, grid);
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-12);
  CHECK(r.base_holds);
  CHECK_THROWS_AS(nash::halfpower_integral_check(point, RateFunction::constant(2.0),
                                                 Vector::Constant(1, 2.0), 1.0, grid),
                  InvalidArgument);
}

TEST_CASE("Jensen slack is non-negative for convex increasing functions") {
  const auto op = gallery::build(gallery::GeneratorSpec::path(10));
  const auto samples = ensembles::unit_sphere(op.space(), 200, 5);
  const spectral::ScalarFunction lambda{[](double) { return 0.0; }, true, true, "zero"};
  const auto r = nash::jensen_transfer_check(op, lambda, spectral::ScalarFunction::power(2.0), samples);
  CHECK(r.jensen_slack >= -1e-12);
  CHECK(r.total == 200);
  spectral::ScalarFunction concave = spectral::ScalarFunction::power(0.5);
  concave.convex = true;  // false declaration
  CHECK_THROWS_AS(nash::jensen_transfer_check(op, lambda, concave, samples), InvalidArgument);
}

TEST_CASE("regular-variation smoothing of a pure power") {
  const auto grid = log_grid(0.1, 100.0, 7);
  const spectral::ScalarFunction one{[](double) { return 1.0; }, true, true, "1"};
  const auto rv = nash::smooth_regular_variation(2.5, one, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(rv.values[i] == doctest::Approx(std::pow(rv.grid[i], 2.5)).epsilon(1e-10));
    CHECK(rv.ratios[i] == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(nash::smooth_regular_variation(1.0, one, grid), NumericalError);
}

TEST_CASE("ultracontractive bound of a power-law rate") {
  // G(y) = e y^{-2/n} inverts to (e / t)^{n/2}.
  for (double n : {1.0, 2.0, 4.0}) {
    const auto b = RateFunction::power_law(n);
    for (double t : {0.01, 0.5, 3.0}) {
      const auto u = nash::ultracontractivity_from_nash(b, t);
      CHECK(u.log_l1_to_inf == doctest::Approx(0.5 * n * (1.0 - std::log(t))).epsilon(1e-7));
      CHECK(u.log_l1_to_l2_sq == doctest::Approx(0.5 * n * (1.0 - std::log(2 * t))).epsilon(1e-7));
    }
  }
}

TEST_CASE("logarithmic rate is too weak") {
  try {
    (void)nash::ultracontractivity_from_nash(RateFunction::log_power(1.0, 1.0), 1.0);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("B too weak") != std::string::npos);
  }
  // (log x)^2 is integrable: G(y) = 1 / log y.
  CHECK(nash::nash_tail_integral(RateFunction::log_power(1.0, 2.0), 4.0) ==
        doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("empirical rate from measured decay") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(16));
  const double s_grid[] = {0.05, 0.2, 1.0, 5.0};
  const auto b = nash::empirical_rate(op, s_grid);
  const auto grid = log_grid(1.0, 1e3, 50);
  CHECK(b.non_decreasing_on(grid));
  for (double x : {0.2, 3.0, 50.0}) {
    double want = 0.0;
    for (double s : s_grid) {
      const double m = spectral::norm_1_to_inf(spectral::heat_semigroup(op, s), op.space());
      want = std::max(want, (std::log(x) - std::log(m)) / s);
    }
    CHECK(b(x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("Bernstein exploration reports finite statistics") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(12));
  const auto ens = ensembles::spiky_nonneg(12, 300, 4);
  const auto st = nash::bernstein_explore(op, spectral::ScalarFunction::power(0.5),
                                          nash::spectral_gap_rate(op), ens);
  CHECK(st.scored > 0);
  CHECK(st.infimum <= st.median);
  CHECK(st.median <= st.maximum);
}
