// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/log_sobolev.hpp"

#include "fracnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracnash::logsob {

namespace {

void require_nonneg(const Vector& f, const char* who) {
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (!(f[i] >= 0.0)) throw InvalidArgument(std::string(who) + ": f must be non-negative");
}

}  // namespace

Vector truncate(const Vector& f, int k) {
  require_nonneg(f, "truncate");
  const double level = std::ldexp(1.0, k);
  return (f.array() - level).max(0.0).min(level).matrix();
}

SliceWindow slice_window(const Vector& f) {
  require_nonneg(f, "slice_window");
  double min_pos = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (f[i] > 0.0) min_pos = std::min(min_pos, f[i]);
  if (!std::isfinite(min_pos)) return {0, -1};
  // k_lo: largest k with 2^{k+1} <= min_pos; k_hi: smallest k with 2^k >= max f.
  SliceWindow w;
  w.k_lo = static_cast<int>(std::floor(std::log2(min_pos))) - 1;
  while (std::ldexp(1.0, w.k_lo + 1) > min_pos) --w.k_lo;
  w.k_hi = static_cast<int>(std::ceil(std::log2(f.maxCoeff())));
  while (std::ldexp(1.0, w.k_hi) < f.maxCoeff()) ++w.k_hi;
  return w;
}

Vector reconstruct(const Vector& f, int k_min, int k_max) {
  Vector sum = Vector::Zero(f.size());
  for (int k = k_min; k <= k_max; ++k) sum += truncate(f, k);
  return sum;
}

TruncationReport truncation_energy_check(const gallery::GeneratorSpec& spec, const Vector& f,
                                         std::optional<std::pair<int, int>> k_range) {
  if (!spec.is_graph())
    throw InvalidArgument("truncation_energy_check: generator kind is not a graph");
  require_nonneg(f, "truncation_energy_check");
  TruncationReport r;
  r.energy = gallery::dirichlet_energy(spec, f);
  if (k_range) {
    r.k_lo = k_range->first;
    r.k_hi = k_range->second;
  } else {
    const SliceWindow w = slice_window(f);
    r.k_lo = w.k_lo;
    r.k_hi = w.k_hi;
    if (w.k_hi >= w.k_lo) {
      // Levels below the window: f_k = 2^k 1_{f>0}, energies 4^k E(1_{f>0}).
      const Vector support = (f.array() > 0.0).cast<double>().matrix();
      r.tail_energy = gallery::dirichlet_energy(spec, support) * std::ldexp(1.0, 2 * w.k_lo) / 3.0;
    }
  }
  double sum = r.tail_energy;
  for (int k = r.k_lo; k <= r.k_hi; ++k) sum += gallery::dirichlet_energy(spec, truncate(f, k));
  r.slice_energy = sum;
  r.slack = r.energy - sum;
  return r;
}

double markov_step_slack(const Vector& f, const MeasureSpace& space) {
  require_nonneg(f, "markov_step_slack");
  const double norm = space.norm2(f);
  if (!(norm > 0.0)) throw InvalidArgument("markov_step_slack: zero function");
  const Vector g = f / norm;
  const SliceWindow w = slice_window(g);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = w.k_lo; k <= w.k_hi; ++k) {
    const Vector gk = truncate(g, k);
    worst = std::min(worst, std::ldexp(space.norm2(gk), -k) - space.norm1(gk));
  }
  return worst;
}

double entropy(const Vector& f, const MeasureSpace& space) {
  const double norm = space.norm2(f);
  if (!(norm > 0.0)) throw InvalidArgument("entropy: zero function");
  const Vector& w = space.weights();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a > 0.0) sum += w[i] * a * a * std::log(a / norm);
  }
  return sum;
}

namespace {

EntropyReport report_for(const spectral::SpectralOperator& op, double alpha, double c,
                         const Vector& f) {
  EntropyReport r;
  r.entropy = entropy(f, op.space());
  r.energy = spectral::quadratic_form(op, alpha, f);
  r.l2sq = op.space().norm2_squared(f);
  r.constant_used = c;
  r.slack = c * (r.energy + r.l2sq) - r.entropy;
  return r;
}

void require_probability(const MeasureSpace& space) {
  if (std::abs(space.total_mass() - 1.0) > 1e-12)
    throw InvalidArgument("logsob_check: weights must sum to one");
}

}  // namespace

EntropyReport logsob_check(const spectral::SpectralOperator& op, double alpha, double c,
                           const ensembles::Ensemble& ensemble) {
  require_probability(op.space());
  if (ensemble.empty()) throw InvalidArgument("logsob_check: empty ensemble");
  EntropyReport worst;
  worst.slack = std::numeric_limits<double>::infinity();
  for (const Vector& f : ensemble.samples) {
    if (!(op.space().norm2(f) > 0.0)) continue;
    const EntropyReport r = report_for(op, alpha, c, f);
    if (r.slack < worst.slack) worst = r;
  }
  return worst;
}

double calibrate_logsob_constant(const spectral::SpectralOperator& op, double alpha,
                                 const ensembles::Ensemble& ensemble) {
  require_probability(op.space());
  double c = 0.0;
  for (const Vector& f : ensemble.samples) {
    if (!(op.space().norm2(f) > 0.0)) continue;
    const EntropyReport r = report_for(op, alpha, 0.0, f);
    c = std::max(c, r.entropy / (r.energy + r.l2sq));
  }
  return c;
}

}  // namespace fracnash::logsob
