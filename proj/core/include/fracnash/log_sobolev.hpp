// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/ensembles.hpp"
#include "fracnash/operator_gallery.hpp"
#include "fracnash/spectral_core.hpp"

#include <optional>
#include <utility>

namespace fracnash::logsob {

using spectral::MeasureSpace;
using spectral::Vector;

/// f_k = min(max(f - 2^k, 0), 2^k) componentwise.  f must be >= 0.
Vector truncate(const Vector& f, int k);

/// Dyadic levels carrying non-trivial slices of f >= 0.
///
/// For k > k_hi the slice is zero.  For k < k_lo every slice equals
/// 2^k 1_{f>0}, so its energy is a geometric series in 4^k.
struct SliceWindow {
  int k_lo = 0;
  int k_hi = 0;
};
SliceWindow slice_window(const Vector& f);

/// sum_{k=k_min}^{k_max} f_k.
Vector reconstruct(const Vector& f, int k_min, int k_max);

struct TruncationReport {
  double energy = 0.0;        ///< E(f)
  double slice_energy = 0.0;  ///< sum_k E(f_k), tail included
  double tail_energy = 0.0;   ///< closed-form part for k < k_lo
  double slack = 0.0;         ///< E(f) - sum_k E(f_k)
  int k_lo = 0;
  int k_hi = 0;
};

/// Range-slice superadditivity of a graph Dirichlet form.  Without
/// `k_range` every k in Z is covered (window plus closed-form tail); with
/// it only the given levels are summed.
TruncationReport truncation_energy_check(const gallery::GeneratorSpec& spec, const Vector& f,
                                         std::optional<std::pair<int, int>> k_range = {});

/// min over window levels of 2^{-k} ||f_k||_2 - ||f_k||_1 after scaling f
/// to unit L^2 norm.  Non-negative by Chebyshev.
double markov_step_slack(const Vector& f, const MeasureSpace& space);

/// int f^2 log(|f| / ||f||_2) dmu with 0 log 0 = 0.
double entropy(const Vector& f, const MeasureSpace& space);

struct EntropyReport {
  double entropy = 0.0;
  double energy = 0.0;  ///< (A^alpha f, f)
  double l2sq = 0.0;
  double constant_used = 0.0;
  double slack = 0.0;   ///< C (energy + l2sq) - entropy
};

/// Sample with the smallest slack of C[(A^alpha f, f) + ||f||_2^2] >= Ent(f).
/// Requires a probability measure.
EntropyReport logsob_check(const spectral::SpectralOperator& op, double alpha, double c,
                           const ensembles::Ensemble& ensemble);

/// Smallest C making every sample's slack non-negative.
double calibrate_logsob_constant(const spectral::SpectralOperator& op, double alpha,
                                 const ensembles::Ensemble& ensemble);

}  // namespace fracnash::logsob
