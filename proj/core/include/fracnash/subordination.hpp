// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/spectral_core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fracnash::subordination {

/// One-sided alpha-stable law mu_t^alpha on (0, inf), characterized by
/// int e^{-lambda s} dmu_t^alpha(s) = exp(-t lambda^alpha).
class StableSubordinator {
 public:
  StableSubordinator(double alpha, double t);

  double alpha() const noexcept { return alpha_; }
  double t() const noexcept { return t_; }
  /// t^{1/alpha}: the law at time t is the t = 1 law scaled by this factor.
  double scale() const noexcept { return scale_; }

 private:
  double alpha_;
  double t_;
  double scale_;
};

/// Density of the t = 1 law at x > 0.  alpha = 1/2 is the closed-form Levy
/// kernel; other alpha use Kanter's angular integral for moderate x and the
/// convergent power series in x^{-alpha} for large x.
double standard_density(double alpha, double x);
/// log of `standard_density`, accurate where the density underflows.
double standard_log_density(double alpha, double x);

/// Density of mu_t^alpha at s > 0 (s <= 0 throws).
double stable_density(const StableSubordinator& sub, double s);
double stable_log_density(const StableSubordinator& sub, double s);

/// Nodes s_q and weights w_q with sum_q w_q g(s_q) ~ int g dmu_t^alpha for
/// g(s) = e^{-lambda s}.  The weights already include the density.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double error_estimate = 0.0;  ///< max level-to-level change over the probe set
  double step = 0.0;            ///< trapezoid step in u = log s
};

struct RuleOptions {
  double tolerance = 0.0;       ///< 0 selects 1e-10 for alpha = 1/2 and 1e-8 otherwise
  std::int64_t max_nodes = 2048;
};

/// Trapezoid rule in u = log s, halving the step until the Laplace
/// transforms at every probe lambda agree between levels.  Throws
/// QuadratureError carrying the achieved error when the node cap is hit.
QuadratureRule subordination_rule(const StableSubordinator& sub, std::span<const double> probe_lambdas,
                                  RuleOptions options = {});

/// int_0^inf e^{-lambda s} dmu_t^alpha(s) by quadrature.
double laplace_transform(const StableSubordinator& sub, double lambda, RuleOptions options = {});

/// |quadrature transform - exp(-t lambda^alpha)|.
double laplace_check(const StableSubordinator& sub, double lambda, RuleOptions options = {});

struct SemigroupResult {
  spectral::Matrix matrix;
  double error_estimate = 0.0;
  std::int64_t nodes = 0;
};

/// T_{t,alpha} = int_0^inf e^{-sA} dmu_t^alpha(s) by quadrature in s.
SemigroupResult subordinate_semigroup(const spectral::SpectralOperator& op, double alpha, double t,
                                      RuleOptions options = {});

/// Poisson semigroup P_t = e^{-t A^{1/2}} through
/// (1/sqrt(pi)) int_0^inf e^{-u} u^{-1/2} T_{t^2/(4u)} du.
SemigroupResult poisson_semigroup(const spectral::SpectralOperator& op, double t,
                                  double tolerance = 1e-11);

/// Spectral-route reference exp(-t A^alpha).
spectral::Matrix spectral_fractional_semigroup(const spectral::SpectralOperator& op, double alpha,
                                               double t);

}  // namespace fracnash::subordination
