// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/errors.hpp"
#include "fracnash/ou_model.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace fracnash;
using spectral::Vector;

namespace {

// Simpson rule for int F(x) dgamma(x) on [-12, 12].
template <class F>
double gaussian_integral(F&& f) {
  const int n = 20000;
  const double a = -12.0, h = 24.0 / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f(x) * std::exp(-0.5 * x * x);
  }
  return sum * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
}

double double_factorial(int k) {
  double r = 1.0;
  for (int j = k; j > 1; j -= 2) r *= j;
  return r;
}

}  // namespace

TEST_CASE("Gauss-Hermite moments") {
  const auto rule = ou::gauss_hermite(10);
  double w = 0.0;
  for (double v : rule.weights) w += v;
  CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k <= 9; ++k) {
    double m = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      m += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
    CHECK(m == doctest::Approx(double_factorial(2 * k - 1)).epsilon(1e-11));
  }
}

TEST_CASE("orthonormal Hermite values") {
  std::vector<double> h(4);
  const double x = 0.7;
  ou::hermite_values(4, x, h);
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == doctest::Approx(x));
  CHECK(h[2] == doctest::Approx((x * x - 1.0) / std::sqrt(2.0)));
  CHECK(h[3] == doctest::Approx((x * x * x - 3.0 * x) / std::sqrt(6.0)));
}

TEST_CASE("norms of the coordinate function") {
  const ou::HermiteModel model(8);
  Vector c = Vector::Zero(8);
  c[1] = 1.0;
  CHECK(ou::mixed_norm(model, c, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ou::mixed_norm(model, c, 4.0) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
  CHECK(ou::mixed_norm(model, c, 1.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("entropy against direct quadrature") {
  const ou::HermiteModel model(8);
  for (double eps : {0.1, 0.8, 3.0}) {
    Vector c = Vector::Zero(8);
    c[0] = 1.0;
    c[1] = eps;
    const double norm2 = 1.0 + eps * eps;
    const double want = gaussian_integral([&](double x) {
      const double f = 1.0 + eps * x;
      return f == 0.0 ? 0.0 : f * f * std::log(std::abs(f) / std::sqrt(norm2));
    });
    CHECK(ou::entropy(model, c) == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("semigroup and energy act diagonally") {
  const ou::HermiteModel model(5);
  const Vector c = Vector::Ones(5);
  const Vector t = model.semigroup(c, 0.5, 2.0);
  for (int k = 0; k < 5; ++k) CHECK(t[k] == doctest::Approx(std::exp(-2.0 * std::sqrt(k))));
  CHECK(model.energy(c) == doctest::Approx(10.0));
  CHECK(model.energy(c, 2.0) == doctest::Approx(30.0));
}

TEST_CASE("Parseval on random coefficients") {
  const ou::HermiteModel model(16);
  Vector c(16);
  for (int k = 0; k < 16; ++k) c[k] = std::sin(3.1 * k + 0.4);
  CHECK(ou::parseval_defect(model, c) <= 1e-12);
}

TEST_CASE("tensor model") {
  const ou::HermiteModel model(3, 2);
  CHECK(model.size() == 9);
  CHECK(model.eigenvalues()[8] == doctest::Approx(4.0));
  Vector c = Vector::Zero(9);
  c[4] = 1.0;  // h_1(x) h_1(y)
  const double x[] = {0.5, -2.0};
  CHECK(model.evaluate(c, x) == doctest::Approx(-1.0));
  CHECK(ou::mixed_norm(model, c, 4.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("Gaussian log-Sobolev over an ensemble") {
  const ou::HermiteModel model(10);
  ensembles::EnsembleSpec es;
  es.per_family = 25;
  es.seed = 4;
  const auto r = ou::ou_lsi_check(model, ensembles::generate(model.op(), es));
  CHECK(r.count == 100);
  CHECK(r.min_slack >= -1e-9);
}

TEST_CASE("exponential candidates") {
  double err = -1.0;
  const Vector c = ou::exponential_candidate(40, 0.5, &err);
  CHECK(c.norm() == doctest::Approx(1.0));
  CHECK(c[1] / c[0] == doctest::Approx(0.5));
  CHECK(c[2] / c[0] == doctest::Approx(0.25 / std::sqrt(2.0)));
  CHECK(err < 1e-12);
}

TEST_CASE("Nelson time keeps the L2 to L4 norm at one") {
  const int ns[] = {12};
  ou::ProbeOptions opts;
  opts.random_samples = 50;
  const auto rows = ou::hypercontractivity_probe(ns, 1.0, 1.01 * std::log(std::sqrt(3.0)), opts);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ratio <= 1.0 + 1e-6);
  CHECK(rows[0].ratio >= 1.0 - 1e-12);
}

TEST_CASE("quadrature degree is enforced") {
  const ou::HermiteModel model(8, 1, 8);
  Vector c = Vector::Ones(8);
  CHECK_THROWS_AS(ou::mixed_norm(model, c, 4.0), InvalidArgument);
}
