// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ensembles.hpp"
#include "fracnash/errors.hpp"
#include "fracnash/operator_gallery.hpp"

#include <doctest.h>

using namespace fracnash;

TEST_CASE("same spec gives the same samples") {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(10));
  ensembles::EnsembleSpec es;
  es.per_family = 5;
  es.seed = 77;
  const auto a = ensembles::generate(op, es);
  const auto b = ensembles::generate(op, es);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
  es.seed = 78;
  CHECK_FALSE(ensembles::generate(op, es).samples[0] == a.samples[0]);
}

TEST_CASE("family names round-trip") {
  for (auto f : {ensembles::Family::uniform_nonneg, ensembles::Family::gaussian,
                 ensembles::Family::heat_smoothed, ensembles::Family::spikes})
    CHECK(ensembles::parse_family(ensembles::to_string(f)) == f);
  CHECK_THROWS_AS(ensembles::parse_family("cauchy"), InvalidArgument);
}

TEST_CASE("sphere and spiky samples") {
  const auto space = spectral::MeasureSpace::uniform(6, 0.5);
  for (const auto& v : ensembles::unit_sphere(space, 20, 3).samples)
    CHECK(space.norm2(v) == doctest::Approx(1.0));
  for (const auto& v : ensembles::spiky_nonneg(6, 50, 3).samples) {
    CHECK(v.minCoeff() >= 0.0);
    CHECK(v.maxCoeff() > 0.0);
  }
}
