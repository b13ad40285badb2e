// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/errors.hpp"
#include "fracnash/operator_gallery.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace fracnash;
using spectral::Vector;

TEST_CASE("path spectrum is 2 - 2 cos(pi k / n)") {
  const int n = 10;
  const auto op = gallery::build(gallery::GeneratorSpec::path(n));
  for (int k = 0; k < n; ++k)
    CHECK(op.eigenvalues()[k] ==
          doctest::Approx(2.0 - 2.0 * std::cos(std::numbers::pi * k / n)).epsilon(1e-12));
}

TEST_CASE("square grid spectrum is the sum of path spectra") {
  const auto op = gallery::build(gallery::GeneratorSpec::grid2d(4, 3));
  std::vector<double> want;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      want.push_back(4.0 - 2.0 * std::cos(std::numbers::pi * i / 4) -
                     2.0 * std::cos(std::numbers::pi * j / 3));
  std::sort(want.begin(), want.end());
  REQUIRE(op.size() == 12);
  for (int k = 0; k < 12; ++k) CHECK(op.eigenvalues()[k] == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("Dirichlet energy equals the quadratic form") {
  for (auto spec : {gallery::GeneratorSpec::cycle(11, 0.5), gallery::GeneratorSpec::grid2d(3, 4),
                    gallery::GeneratorSpec::path(6, 0.25)}) {
    spec.lattice_measure = true;
    const auto op = gallery::build(spec);
    Vector f(op.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = std::cos(0.7 * i * i);
    CHECK(gallery::dirichlet_energy(spec, f) ==
          doctest::Approx(spectral::quadratic_form(op, 1.0, f)).epsilon(1e-12));
  }
}

TEST_CASE("cycle edges and constants in the kernel") {
  const auto spec = gallery::GeneratorSpec::cycle(5);
  CHECK(gallery::edges(spec).size() == 5);
  const auto op = gallery::build(spec);
  CHECK(std::abs(op.eigenvalues()[0]) < 1e-12);
  CHECK(gallery::dirichlet_energy(spec, Vector::Constant(5, 3.0)) == doctest::Approx(0.0));
}

TEST_CASE("diagonal and ou kinds") {
  const auto d = gallery::build(gallery::GeneratorSpec::diagonal({3.0, 1.0, 2.0}));
  CHECK(d.eigenvalues()[0] == doctest::Approx(1.0));
  CHECK(d.eigenvalues()[2] == doctest::Approx(3.0));
  const auto o = gallery::build(gallery::GeneratorSpec::ou(6));
  for (int k = 0; k < 6; ++k) CHECK(o.eigenvalues()[k] == doctest::Approx(k));
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(gallery::validate(gallery::GeneratorSpec::cycle(1)), InvalidArgument);
  CHECK_THROWS_AS(gallery::validate(gallery::GeneratorSpec::path(4, -1.0)), InvalidArgument);
  CHECK_THROWS_AS(gallery::validate(gallery::GeneratorSpec::diagonal({1.0, -2.0})),
                  InvalidArgument);
  CHECK_THROWS_AS(gallery::parse_kind("torus"), InvalidArgument);
  CHECK(gallery::parse_kind("grid2d") == gallery::GeneratorKind::grid2d);
}
