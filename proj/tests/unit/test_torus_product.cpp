// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/errors.hpp"
#include "fracnash/torus_product.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fracnash;

namespace {

double theta_brute(double t) {
  double s = 1.0;
  for (int m = 1; m < 2000; ++m) s += 2.0 * std::exp(-t * m * m);
  return s;
}

// int_0^inf u^{p} log theta(u) du by Simpson in v = log u, with theta from
// the modular identity below u = 1.
double moment_of_log_theta(double p) {
  auto log_th = [](double u) {
    if (u >= 1.0) return std::log(theta_brute(u));
    double dual = 1.0;
    for (int k = 1; k < 50; ++k) dual += 2.0 * std::exp(-std::numbers::pi * std::numbers::pi * k * k / u);
    return 0.5 * std::log(std::numbers::pi / u) + std::log(dual);
  };
  const double lo = -30.0, hi = std::log(60.0);
  const int n = 20000;
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = std::exp(lo + i * h);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::pow(u, p + 1.0) * log_th(u);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("theta at pi") {
  const double want = std::pow(std::numbers::pi, 0.25) / std::tgamma(0.75);
  CHECK(torus::theta(std::numbers::pi) == doctest::Approx(want).epsilon(1e-15));
  for (double t : {0.05, 0.7, 1.0, 3.0, 20.0}) {
    CHECK(torus::theta_direct(t) == doctest::Approx(torus::theta_dual(t)).epsilon(1e-14));
    CHECK(torus::theta(t) == doctest::Approx(theta_brute(t)).epsilon(1e-14));
  }
}

TEST_CASE("log theta and its derivative") {
  CHECK(torus::log_theta(60.0) == doctest::Approx(2.0 * std::exp(-60.0)).epsilon(1e-12));
  for (double t : {0.01, 0.3, 2.0, 9.0}) {
    const double h = 1e-6 * t;
    const double fd = (torus::log_theta(t + h) - torus::log_theta(t - h)) / (2 * h);
    CHECK(torus::dlog_theta(t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("counting function") {
  CHECK(torus::counting({1.0, 0}, 10.5) == 10);
  CHECK(torus::counting({2.0, 0}, 3.0) == 9);
  CHECK(torus::counting({1.0, 4}, 10.5) == 4);
  CHECK(torus::TorusSpectrum{2.0, 0}.a(16) == doctest::Approx(4.0));
}

TEST_CASE("product sum against a brute-force sum") {
  struct Case {
    double gamma, s;
    int k;
  };
  for (auto c : {Case{1.0, 0.01, 3000}, Case{2.0, 0.05, 800}, Case{1.0, 0.5, 100},
                 Case{0.5, 0.02, 2000}}) {
    double want = 0.0;
    for (int k = 1; k <= c.k; ++k) want += std::log(theta_brute(c.s * std::pow(k, 1.0 / c.gamma)) );
    CHECK(torus::log_product_sum(c.gamma, c.k, c.s) == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("remainder bound covers the omitted terms") {
  const double s = 0.02;
  const double k = 400;
  double tail = 0.0;
  for (int j = 401; j < 200000; ++j) tail += torus::log_theta(s * j);
  CHECK(torus::truncation_remainder(1.0, k, s) >= tail);
  CHECK(torus::truncation_remainder(1.0, k, s) <= 10.0 * tail);

  const auto kk = torus::tail_rule_truncation(1.0, s, 1e-8);
  const double full = torus::log_product_sum(1.0, static_cast<double>(kk), s);
  CHECK(torus::truncation_remainder(1.0, static_cast<double>(kk), s) <= 1e-8 * full);
}

TEST_CASE("truncation error suggests a larger K") {
  try {
    (void)torus::log_density_at_e({1.0, 10}, 0.01);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.suggested_k() > 10);
  }
  const auto d = torus::log_density_at_e({1.0, 0}, 0.01);
  CHECK(d.remainder <= 1e-8 * d.value);
}

TEST_CASE("small-time constant against direct quadrature") {
  CHECK(torus::torus_constant(1.0) == doctest::Approx(moment_of_log_theta(0.0)).epsilon(1e-9));
  CHECK(torus::torus_constant(2.0) == doctest::Approx(2.0 * moment_of_log_theta(1.0)).epsilon(1e-9));
  CHECK(torus::fitted_small_time_constant({1.0, 0}) ==
        doctest::Approx(torus::torus_constant(1.0)).epsilon(1e-6));
}

TEST_CASE("stable small-time constant") {
  // Laplace's method on exp(-t l^alpha) gives (1-alpha) alpha^{alpha/(1-alpha)} t^{1/(1-alpha)}.
  CHECK(torus::stable_small_time_constant(0.5, 3.0) == doctest::Approx(9.0 / 4.0).epsilon(1e-12));
  const double a = 0.3, t = 2.0;
  CHECK(torus::stable_small_time_constant(a, t) ==
        doctest::Approx((1 - a) * std::pow(a, a / (1 - a)) * std::pow(t, 1 / (1 - a))).epsilon(1e-12));
}

TEST_CASE("subordinated density regimes") {
  const torus::TorusSpectrum spec{1.0, 0};
  CHECK(torus::subordinated_log_density(spec, 0.3, 1.0).status == torus::Status::divergent);
  const auto fin = torus::subordinated_log_density(spec, 0.75, 1.0);
  CHECK(fin.status == torus::Status::finite);
  CHECK(std::isfinite(fin.log_value));
  CHECK(torus::to_string(torus::Status::inconclusive) == "inconclusive");
}

TEST_CASE("profile exponent") {
  const double grid[] = {1e-4, 1e-3, 1e-2};
  const auto fit = torus::profile_exponent_fit({2.0, 0}, grid);
  CHECK(fit.beta == doctest::Approx(2.0).epsilon(0.1));
  CHECK(fit.t.size() == 3);
}
