// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/ensembles.hpp"
#include "fracnash/nash_toolkit.hpp"
#include "fracnash/spectral_core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fracnash::ou {

using spectral::Vector;

/// Gauss-Hermite rule for the standard Gaussian measure (weights sum to 1).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// Golub-Welsch with weights recomputed from the Christoffel function.
GaussHermite gauss_hermite(int q);

/// Orthonormal Hermite polynomials h_0..h_{n-1} in L^2(gamma_1) at x.
void hermite_values(int n, double x, std::span<double> out);

/// Ornstein-Uhlenbeck generator truncated to Hermite degrees < n per axis
/// on gamma_d, d <= 3.  Coefficient vectors have n^d entries, the last
/// axis varying fastest.
class HermiteModel {
 public:
  /// q = 0 picks 2n nodes per axis.
  explicit HermiteModel(int n, int dim = 1, int q = 0);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  int q() const noexcept { return q_; }
  Eigen::Index size() const noexcept { return size_; }
  const GaussHermite& rule() const noexcept { return rule_; }

  /// Total degree of each basis element.
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  /// Diagonal operator on coefficient space with unit weights.
  spectral::SpectralOperator op() const;

  /// f(x) for f = sum c_k H_k; x has dim() entries.
  double evaluate(const Vector& coeffs, std::span<const double> x) const;
  /// f on the tensor quadrature grid (q^d values) and the matching weights.
  Vector values_at_nodes(const Vector& coeffs) const;
  Vector node_weights() const;

  /// Coefficients of T_{t,alpha} f: c_k e^{-t lambda_k^alpha}.
  Vector semigroup(const Vector& coeffs, double alpha, double t) const;
  /// (A^alpha f, f) = sum lambda_k^alpha c_k^2.
  double energy(const Vector& coeffs, double alpha = 1.0) const;

 private:
  int n_;
  int dim_;
  int q_;
  Eigen::Index size_;
  GaussHermite rule_;
  Vector eigenvalues_;
};

/// ||f||_p in L^p(gamma_d).  p = 2 and 4 use the quadrature (exact once
/// q >= 2n); p = 1 in one dimension integrates |f| piecewise between the
/// sign changes of f, and on tensor models uses an 8n-point product rule.
double mixed_norm(const HermiteModel& model, const Vector& coeffs, double p);

/// int f^2 log(|f| / ||f||_2) dgamma, computed like the p = 1 norm.
double entropy(const HermiteModel& model, const Vector& coeffs);

/// |quadrature ||f||_2 - Euclidean norm of the coefficients|.
double parseval_defect(const HermiteModel& model, const Vector& coeffs);

struct LsiReport {
  double min_slack = 0.0;  ///< min of (Af, f) - entropy
  double entropy = 0.0;    ///< at the minimizing sample
  double energy = 0.0;
  std::size_t index = 0;
  std::size_t count = 0;
};
/// Checks int f^2 log(|f| / ||f||_2) dgamma <= (Af, f) over the ensemble.
LsiReport ou_lsi_check(const HermiteModel& model, const ensembles::Ensemble& ensemble);

/// Infimum of (A^alpha g, g) / (||g||_2^2 (log ||g||_2)^alpha) over
/// g = f / ||f||_1 with ||g||_2 > 1.  Throws NumericalError when no sample
/// is scored.
nash::NashCertificate ou_log_nash_check(const HermiteModel& model, double alpha,
                                        const ensembles::Ensemble& ensemble);

/// Unit-norm coefficients theta^k / sqrt(k!) of e^{theta x}, k < n.
/// `projection_error` receives the relative L^2 norm of the dropped tail.
Vector exponential_candidate(int n, double theta, double* projection_error = nullptr);

struct GrowthRow {
  int n = 0;
  double ratio = 0.0;  ///< sup ||T f||_4 / ||f||_2
  std::string witness;  ///< "exp" or "random"
  double theta = 0.0;   ///< for exponential witnesses
  double projection_error = 0.0;
};

struct ProbeOptions {
  std::vector<double> thetas;  ///< empty: 240 log-spaced values in [0.05, 2 sqrt(n) + 2]
  std::size_t random_samples = 200;
  std::uint64_t seed = 1;
};

/// sup ||T_{t,alpha} f||_4 / ||f||_2 over exponential candidates and
/// random coefficient vectors, for each truncation in `n_list`.
std::vector<GrowthRow> hypercontractivity_probe(std::span<const int> n_list, double alpha, double t,
                                                const ProbeOptions& options = {});

}  // namespace fracnash::ou
