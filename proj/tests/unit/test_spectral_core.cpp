// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/errors.hpp"
#include "fracnash/operator_gallery.hpp"
#include "fracnash/spectral_core.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fracnash;
using spectral::Matrix;
using spectral::Vector;

namespace {

// Truncated Taylor series with scaling and squaring; independent of the
// eigendecomposition route.
Matrix taylor_exp(const Matrix& a) {
  int squarings = 0;
  Matrix x = a;
  while (x.cwiseAbs().rowwise().sum().maxCoeff() > 0.5) {
    x /= 2.0;
    ++squarings;
  }
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * x / k;
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("measure space norms") {
  const spectral::MeasureSpace space(Vector::Constant(4, 0.25));
  Vector f(4);
  f << 1, -1, 2, 0;
  CHECK(space.total_mass() == doctest::Approx(1.0));
  CHECK(space.norm1(f) == doctest::Approx(1.0));
  CHECK(space.norm2_squared(f) == doctest::Approx(1.5));
  CHECK(space.norm_inf(f) == doctest::Approx(2.0));
  CHECK(space.norm(f, 3.0) == doctest::Approx(std::cbrt(10.0 / 4.0)));
  CHECK_THROWS_AS(spectral::MeasureSpace(Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("cycle spectrum matches the discrete Fourier formula") {
  const int n = 12;
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(n));
  std::vector<double> want;
  for (int k = 0; k < n; ++k) want.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
  std::sort(want.begin(), want.end());
  for (int k = 0; k < n; ++k) CHECK(op.eigenvalues()[k] == doctest::Approx(want[k]).epsilon(1e-12));
  const Matrix& u = op.eigenvectors();
  const Matrix gram = u.transpose() * op.space().weights().asDiagonal() * u;
  CHECK((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weighted eigendecomposition reproduces the matrix") {
  Vector w(3);
  w << 1.0, 2.0, 0.5;
  // W M symmetric: M = W^{-1} S for a symmetric S.
  Matrix s(3, 3);
  s << 2, -1, 0, -1, 3, -2, 0, -2, 2;
  const Matrix m = w.cwiseInverse().asDiagonal() * s;
  const auto op = spectral::eigendecompose(m, spectral::MeasureSpace(w));
  CHECK((op.matrix() - m).cwiseAbs().maxCoeff() < 1e-12);
  Matrix bad = m;
  bad(0, 1) += 0.5;
  CHECK_THROWS_AS(spectral::eigendecompose(bad, spectral::MeasureSpace(w)), AsymmetryError);
}

TEST_CASE("heat semigroup agrees with a Taylor-series exponential") {
  const auto spec = gallery::GeneratorSpec::path(7);
  const auto op = gallery::build(spec);
  const Matrix a = gallery::generator_matrix(spec);
  for (double t : {0.1, 1.0, 3.0}) {
    const Matrix want = taylor_exp(-t * a);
    CHECK((spectral::heat_semigroup(op, t) - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("quadratic forms and fractional powers") {
  const auto spec = gallery::GeneratorSpec::cycle(9);
  const auto op = gallery::build(spec);
  const Matrix a = gallery::generator_matrix(spec);
  Vector f(9);
  for (int i = 0; i < 9; ++i) f[i] = std::sin(1.3 * i) + 0.2 * i;
  CHECK(spectral::quadratic_form(op, 1.0, f) == doctest::Approx(f.dot(a * f)).epsilon(1e-12));
  // (A^{1/2})^2 = A
  const Matrix half = spectral::apply_function(op, spectral::ScalarFunction::power(0.5));
  CHECK((half * half - a).cwiseAbs().maxCoeff() < 1e-12);
  // 0^0 = 1 keeps the constants
  CHECK(spectral::quadratic_form(op, 0.0, f) == doctest::Approx(f.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("non-finite functional calculus names the eigenvalue") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(4));
  const spectral::ScalarFunction inv{[](double x) { return 1.0 / x; }, false, false, "1/x"};
  try {
    (void)spectral::apply_function(op, inv);
    FAIL("expected SpectrumDomainError");
  } catch (const SpectrumDomainError& e) {
    CHECK(e.eigenvalue() == doctest::Approx(0.0));
  }
}

TEST_CASE("spot check rejects a false monotonicity flag") {
  const double grid[] = {0.0, 0.5, 1.0, 2.0, 4.0};
  CHECK(spectral::spot_check(spectral::ScalarFunction::power(2.0), grid));
  spectral::ScalarFunction liar = spectral::ScalarFunction::heat(1.0);
  liar.non_decreasing = true;
  CHECK_FALSE(spectral::spot_check(liar, grid));
}

TEST_CASE("one-to-infinity norm of the heat kernel") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(8));
  // At t = 0 the kernel is the identity: max |delta_ij| / w_j = 1.
  CHECK(spectral::norm_1_to_inf(spectral::heat_semigroup(op, 0.0), op.space()) ==
        doctest::Approx(1.0));
  // Large t: kernel tends to 1/N everywhere.
  CHECK(spectral::norm_1_to_inf(spectral::heat_semigroup(op, 200.0), op.space()) ==
        doctest::Approx(1.0 / 8).epsilon(1e-9));
}
