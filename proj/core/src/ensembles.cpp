// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ensembles.hpp"

#include "fracnash/errors.hpp"

#include <cmath>
#include <sstream>

namespace fracnash::ensembles {

using spectral::Vector;

std::string_view to_string(Family family) {
  switch (family) {
    case Family::uniform_nonneg: return "uniform";
    case Family::gaussian: return "gaussian";
    case Family::heat_smoothed: return "smoothed";
    case Family::spikes: return "spike";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "uniform") return Family::uniform_nonneg;
  if (name == "gaussian") return Family::gaussian;
  if (name == "smoothed") return Family::heat_smoothed;
  if (name == "spike") return Family::spikes;
  throw InvalidArgument("unknown ensemble family '" + std::string(name) + "'");
}

void Ensemble::append(Vector v, Family family) {
  samples.push_back(std::move(v));
  families.push_back(family);
}

namespace {

Vector uniform_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

Vector gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

}  // namespace

Ensemble generate(const spectral::SpectralOperator& op, const EnsembleSpec& spec) {
  if (spec.per_family == 0) throw InvalidArgument("ensemble: per_family must be > 0");
  if (spec.families.empty()) throw InvalidArgument("ensemble: no families selected");
  const Eigen::Index n = op.size();
  std::mt19937_64 rng(spec.seed);
  Ensemble out;
  std::ostringstream desc;
  desc << "seed=" << spec.seed << " per_family=" << spec.per_family << " families=";
  for (std::size_t f = 0; f < spec.families.size(); ++f) {
    const Family family = spec.families[f];
    desc << (f ? "+" : "") << to_string(family);
    for (std::size_t k = 0; k < spec.per_family; ++k) {
      switch (family) {
        case Family::uniform_nonneg: out.append(uniform_vector(n, rng), family); break;
        case Family::gaussian: out.append(gaussian_vector(n, rng), family); break;
        case Family::heat_smoothed: {
          if (spec.smoothing_times.empty())
            throw InvalidArgument("ensemble: smoothed family needs smoothing times");
          const double s = spec.smoothing_times[k % spec.smoothing_times.size()];
          const Vector xi = gaussian_vector(n, rng);
          const Vector c = op.coefficients(xi);
          out.append(op.synthesize((c.array() * (-s * op.eigenvalues().array()).exp()).matrix()),
                     family);
          break;
        }
        case Family::spikes: {
          std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
          Vector v = spec.spike_floor * uniform_vector(n, rng);
          v[pick(rng)] += 1.0;
          out.append(std::move(v), family);
          break;
        }
      }
    }
  }
  out.descriptor = desc.str();
  return out;
}

Ensemble spiky_nonneg(Eigen::Index n, std::size_t count, std::uint64_t seed, double max_exponent) {
  if (n < 1 || count == 0) throw InvalidArgument("spiky_nonneg: empty request");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Ensemble out;
  for (std::size_t k = 0; k < count; ++k) {
    const double p = std::exp(u(rng) * std::log(max_exponent));
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::pow(u(rng), p);
    if (v.maxCoeff() <= 0.0) v[0] = 1.0;
    out.append(std::move(v), Family::uniform_nonneg);
  }
  std::ostringstream desc;
  desc << "spiky seed=" << seed << " count=" << count << " max_exponent=" << max_exponent;
  out.descriptor = desc.str();
  return out;
}

Ensemble unit_sphere(const spectral::MeasureSpace& space, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Ensemble out;
  for (std::size_t k = 0; k < count; ++k) {
    Vector v = gaussian_vector(space.size(), rng);
    const double norm = space.norm2(v);
    if (norm > 0.0) v /= norm;
    out.append(std::move(v), Family::gaussian);
  }
  std::ostringstream desc;
  desc << "unit-sphere seed=" << seed << " count=" << count;
  out.descriptor = desc.str();
  return out;
}

}  // namespace fracnash::ensembles
