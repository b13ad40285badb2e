// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fracnash::torus {

/// theta(t) = sum_{m in Z} e^{-t m^2}.  Uses the direct sum for t >= 1 and
/// the Poisson-dual sqrt(pi/t) sum_k e^{-pi^2 k^2 / t} below.
double theta(double t, double tol = 1e-16);
double theta_direct(double t, double tol = 1e-16);
double theta_dual(double t, double tol = 1e-16);
/// log theta(t), accurate for large t where theta(t) - 1 is tiny.
double log_theta(double t);
/// d/dt log theta(t).
double dlog_theta(double t);

/// Diagonal product generator with coefficients a_k = k^{1/gamma}.
/// K = 0 means "choose K by the tail rule" where a truncation is needed.
struct TorusSpectrum {
  double gamma = 1.0;
  std::uint64_t K = 0;

  double a(std::uint64_t k) const;
};

/// #{k <= K : a_k <= s}; K = 0 counts without a cap.
std::uint64_t counting(const TorusSpectrum& spec, double s);

/// sum_{k <= K} log theta(s k^{1/gamma}) for real K >= 0.  The first block
/// with s k^{1/gamma} <= 1/4 is summed in closed form, the next few hundred
/// terms explicitly and the rest by Euler-Maclaurin.
double log_product_sum(double gamma, double K, double s);

/// Upper bound on sum_{k > K} log theta(s k^{1/gamma}).
double truncation_remainder(double gamma, double K, double s);

/// Smallest K whose remainder at s is below rel_tol times the full sum.
std::uint64_t tail_rule_truncation(double gamma, double s, double rel_tol = 1e-8);

struct LogDensity {
  double value = 0.0;      ///< sum over k <= K (a lower bound)
  double remainder = 0.0;  ///< certified bound on the omitted terms
  std::uint64_t K = 0;
};

/// log mu_t(e) = sum_{k <= K} log theta(a_k t).  Throws TruncationError
/// with a suggested K when the remainder exceeds rel_tol of the full sum.
LogDensity log_density_at_e(const TorusSpectrum& spec, double t, double rel_tol = 1e-8);

/// C_gamma = gamma int_0^inf u^{gamma-1} log theta(u) du, the limit of
/// t^gamma log mu_t(e).
double torus_constant(double gamma);

/// c1 in log mu_s(e) ~ c1 s^{-gamma}, by least squares of s^gamma F(s)
/// against [1, s^gamma log(1/s), s^gamma] on small s.
double fitted_small_time_constant(const TorusSpectrum& spec);
/// K used by the fit above when spec.K = 0.
std::uint64_t fit_truncation(double gamma);

/// c2(t) in log p_t(s) ~ -c2(t) s^{-alpha/(1-alpha)} for the alpha-stable law.
double stable_small_time_constant(double alpha, double t);

enum class Status { finite, divergent, inconclusive };
std::string_view to_string(Status status);

struct SubordinatedResult {
  Status status = Status::inconclusive;
  double log_value = 0.0;  ///< log of the integral from the smallest cutoff
  double profile_exponent = 0.0;  ///< gamma
  double stable_exponent = 0.0;   ///< alpha / (1 - alpha)
  double c1 = 0.0;
  double c2 = 0.0;
  std::array<double, 3> cutoffs{};   ///< s_lo levels s_x, s_x/4, s_x/16
  std::array<double, 3> evidence{};  ///< log of the integral over [s_lo, inf)
  std::uint64_t K = 0;
};

/// log int_0^inf mu_s(e) dmu_t^alpha(s) with a divergence classifier.
SubordinatedResult subordinated_log_density(const TorusSpectrum& spec, double alpha, double t);

/// Critical time at alpha = gamma / (gamma + 1): bisection on the classifier
/// over [t_lo, t_hi].
double critical_threshold(const TorusSpectrum& spec, double alpha, double t_lo, double t_hi);

struct ExponentFit {
  double beta = 0.0;
  double residual = 0.0;  ///< root-mean-square residual of the log-log fit
  std::vector<double> t;
  std::vector<double> log_values;
};

/// Slope of log(log I(t)) against log(1/t) for the subordinated density.
/// Throws NumericalError if a grid point is not classified finite.
ExponentFit decay_exponent_fit(const TorusSpectrum& spec, double alpha,
                               std::span<const double> t_grid);

/// Slope of log(log mu_t(e)) against log(1/t) for the unsubordinated product.
ExponentFit profile_exponent_fit(const TorusSpectrum& spec, std::span<const double> t_grid);

}  // namespace fracnash::torus
