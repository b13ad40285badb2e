// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/spectral_core.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace fracnash::ensembles {

enum class Family {
  uniform_nonneg,  ///< i.i.d. U(0, 1) entries
  gaussian,        ///< i.i.d. N(0, 1) entries
  heat_smoothed,   ///< e^{-sA} xi for gaussian xi and s from `smoothing_times`
  spikes,          ///< indicator of a random point plus a small positive floor
};

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

struct EnsembleSpec {
  std::size_t per_family = 200;
  std::uint64_t seed = 0;
  std::vector<Family> families = {Family::uniform_nonneg, Family::gaussian, Family::heat_smoothed,
                                  Family::spikes};
  std::vector<double> smoothing_times = {0.01, 0.1, 1.0};
  double spike_floor = 1e-3;
};

/// A fixed list of test vectors with the family each came from.
struct Ensemble {
  std::vector<spectral::Vector> samples;
  std::vector<Family> families;
  std::string descriptor;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  void append(spectral::Vector v, Family family);
};

/// Generates the ensemble on the points of `op`.  Same spec, same samples.
Ensemble generate(const spectral::SpectralOperator& op, const EnsembleSpec& spec);

/// Non-negative vectors of varying spikiness: U(0,1)^p entries with the
/// exponent p drawn log-uniformly from [1, max_exponent].  Dense coverage
/// of the L^1/L^2 ratio range on small spaces.
Ensemble spiky_nonneg(Eigen::Index n, std::size_t count, std::uint64_t seed,
                      double max_exponent = 40.0);

/// Gaussian vectors normalized to unit L^2(mu) norm.
Ensemble unit_sphere(const spectral::MeasureSpace& space, std::size_t count, std::uint64_t seed);

}  // namespace fracnash::ensembles
