// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/ensembles.hpp"
#include "fracnash/spectral_core.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracnash::nash {

using spectral::ScalarFunction;
using spectral::SpectralOperator;
using spectral::Vector;

/// A decreasing C^1 bijection m of (0, inf), stored through log m and its
/// derivative so that profiles like exp(t^{-gamma}) stay representable.
class DecayProfile {
 public:
  DecayProfile(std::string name, std::function<double(double)> log_m,
               std::function<double(double)> dlog_m);

  /// m(t) = c t^{-n/2}
  static DecayProfile power(double n, double c = 1.0);
  /// m(t) = exp(k t^{-gamma})
  static DecayProfile stretched(double gamma, double k = 1.0);
  /// m(t) = exp(-rate t); range (0, 1)
  static DecayProfile exponential(double rate = 1.0);
  /// From m and m' directly.
  static DecayProfile from_m(std::string name, std::function<double(double)> m,
                             std::function<double(double)> dm);

  const std::string& name() const noexcept { return name_; }
  double log_m(double t) const { return log_m_(t); }
  double m(double t) const;
  double dm(double t) const;
  /// M(t) = -log m(t) and its derivative.
  double big_m(double t) const { return -log_m_(t); }
  double big_m_prime(double t) const { return -dlog_m_(t); }

  /// Largest relative mismatch between M' and a central difference of M
  /// over `grid`.
  double derivative_mismatch(std::span<const double> grid) const;
  bool strictly_decreasing_on(std::span<const double> grid) const;

 private:
  std::string name_;
  std::function<double(double)> log_m_;
  std::function<double(double)> dlog_m_;
};

/// A non-decreasing function B on [0, inf), evaluated through
/// L = log x so that arguments far beyond double range are allowed.
class RateFunction {
 public:
  RateFunction(std::string name, std::function<double(double)> of_log,
               std::vector<double> breakpoints = {});

  static RateFunction constant(double value);
  /// (n / (2e)) x^{2/n}
  static RateFunction power_law(double n);
  /// c (log_+ x)^p
  static RateFunction log_power(double c, double p);
  /// B(x) = sup_t (t log x + t M(1/t)) evaluated numerically.
  static RateFunction from_profile(const DecayProfile& profile);
  /// B(x) = values[k] on [knots[k], knots[k+1]), values[0] below knots[0];
  /// `values` must be non-decreasing and knots increasing.
  static RateFunction step(std::vector<double> knots, std::vector<double> values,
                           std::string name = "step");
  /// B(x) = from an x-domain rule.
  static RateFunction from_function(std::string name, std::function<double(double)> b,
                                    std::vector<double> breakpoints = {});

  const std::string& name() const noexcept { return name_; }
  double operator()(double x) const;
  double of_log(double log_x) const { return of_log_(log_x); }
  /// Points where B may jump (used to split integrals).
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  RateFunction pow(double alpha) const;           ///< B^alpha
  RateFunction dilated(double b) const;           ///< x -> B(b x)
  RateFunction scaled(double c) const;            ///< x -> c B(x)
  RateFunction composed(const ScalarFunction& g) const;  ///< x -> g(B(x))

  bool non_decreasing_on(std::span<const double> grid) const;

 private:
  std::string name_;
  std::function<double(double)> of_log_;
  std::vector<double> breakpoints_;
};

/// Theta(x) = -m'(m^{-1}(x)).  Throws InvalidArgument for x outside the
/// range of m.
double theta_from_profile(const DecayProfile& profile, double x);
/// m^{-1}(x) by bisection in log t to 1e-10 relative.
double inverse_profile(const DecayProfile& profile, double x);

/// B(x) for x > 1.  Throws NumericalError "profile incompatible with (be)"
/// when the objective is unbounded.
double rate_from_profile(const DecayProfile& profile, double x);
/// Same with the argument given as L = log x.
double rate_from_profile_log(const DecayProfile& profile, double log_x);

/// Best c with M'(u) >= c M'(t) for u in [t, 2t], t on `t_grid`.
double check_condition_D(const DecayProfile& profile, std::span<const double> t_grid);

struct Equivalence {
  double c1 = 0.0;
  double c2 = 0.0;
};
/// Smallest C1 with m1(t) <= C1 m2(C2 t) on `grid`, or nothing when the
/// supremum keeps growing as the grid is extended.
std::optional<double> domination_constant(const DecayProfile& p1, const DecayProfile& p2,
                                          double c2, std::span<const double> grid);
/// Scans C2 over a log grid, nearest to 1 first.
std::optional<Equivalence> profile_equivalence(const DecayProfile& p1, const DecayProfile& p2,
                                               std::span<const double> grid);

struct SampleRecord {
  ensembles::Family family = ensembles::Family::gaussian;
  double l1 = 0.0;     ///< ||f||_1 before normalization
  double l2sq = 0.0;   ///< ||g||_2^2 with g = f / ||f||_1
  double form = 0.0;   ///< (A^alpha g, g)
  double denominator = 0.0;
  double ratio = 0.0;
  bool scored = false;
};

struct NashCertificate {
  double ratio_infimum = 0.0;
  Vector witness;
  double alpha = 1.0;
  std::string ensemble;
  std::string rate;
  std::vector<SampleRecord> samples;
  std::size_t scored = 0;
  std::size_t degenerate = 0;
  /// Constants (a, b) in a ||g||^2 [B(b ||g||^2)]^alpha, recorded for audit.
  double constant_a = 1.0;
  double constant_b = 1.0;

  /// One header line then one line per sample.
  std::string to_text() const;
};

/// Ratio (A^alpha g, g) / (||g||_2^2 [B(||g||_2^2)]^alpha) for g = f / ||f||_1.
NashCertificate nash_ratio(const SpectralOperator& op, const RateFunction& b, double alpha,
                           const ensembles::Ensemble& ensemble);

struct HalfPowerReport {
  double lhs = 0.0;  ///< int_{v(T)}^{v(0)} B(sqrt x) dx
  double rhs = 0.0;  ///< (A^{1/2} g, g)^2
  bool base_holds = false;  ///< base inequality held at every grid time
  double worst_base_slack = 0.0;
};

/// Evaluates both sides of the integrated inequality along P_t g.
/// Throws NumericalError if ||P_t g||_2 is not non-increasing on the grid.
HalfPowerReport halfpower_integral_check(const SpectralOperator& op, const RateFunction& b,
                                         const Vector& g, double horizon,
                                         std::span<const double> time_grid);

/// A + rho I.
SpectralOperator rho_shift(const SpectralOperator& op, double rho);

struct JensenReport {
  double transfer_slack = 0.0;  ///< min over applicable samples
  double jensen_slack = 0.0;    ///< min over all samples, unit L^2 normalization
  std::size_t applicable = 0;
  std::size_t total = 0;
};

/// Transfers a Lambda-Nash inequality through a convex non-decreasing Phi.
/// Throws InvalidArgument when Phi's flags fail a spot check.
JensenReport jensen_transfer_check(const SpectralOperator& op, const ScalarFunction& lambda,
                                   const ScalarFunction& phi,
                                   const ensembles::Ensemble& ensemble);

struct RegularVariation {
  ScalarFunction phi;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> ratios;  ///< Phi(x) / (x^alpha l(x))
  bool increasing = false;
  bool convex = false;
};

/// Phi(x) = int_0^x int_0^tau alpha(alpha-1) s^{alpha-2} l(s) ds dtau.
RegularVariation smooth_regular_variation(double alpha, const ScalarFunction& ell,
                                          std::span<const double> x_grid);

struct UltraBound {
  double log_l1_to_l2_sq = 0.0;  ///< log U(t), U(t) = G^{-1}(2t)
  double log_l1_to_inf = 0.0;    ///< log U(t/2) = log G^{-1}(t)
  std::string composition;
};

/// G(y) = int_y^inf dx / (x B(x)) for y = e^{log_y}.  Throws NumericalError
/// "B too weak for ultracontractivity" when the tail does not converge.
double nash_tail_integral(const RateFunction& b, double log_y);

/// Integrates psi' <= -2 psi B(psi) to bound ||T_t||_{1->2}^2 and composes
/// the doubling ||T_t||_{1->inf} <= ||T_{t/2}||_{1->2}^2.
UltraBound ultracontractivity_from_nash(const RateFunction& b, double t);

struct BernsteinStats {
  double infimum = 0.0;
  double median = 0.0;
  double maximum = 0.0;
  std::size_t scored = 0;
  Vector witness;
};

/// Empirical (g(A)f, f) / (||f||_2^2 g(B(||f||_2^2))) over the normalized
/// ensemble.  Exploratory only.
BernsteinStats bernstein_explore(const SpectralOperator& op, const ScalarFunction& g,
                                 const RateFunction& b, const ensembles::Ensemble& ensemble);

/// B(x) = max(0, max_s (log x - log m(s)) / s) with m(s) = ||e^{-sA}||_{1->inf}
/// measured on `s_grid`.
RateFunction empirical_rate(const SpectralOperator& op, std::span<const double> s_grid);

/// B(x) = lambda_2 (x - 1 / |X|)_+ / x: a Nash rate valid for every f with
/// ||f||_1 = 1 whenever lambda_2 is the spectral gap above the constants.
RateFunction spectral_gap_rate(const SpectralOperator& op);

}  // namespace fracnash::nash
