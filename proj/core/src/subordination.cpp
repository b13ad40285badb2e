// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/subordination.hpp"

#include "fracnash/errors.hpp"
#include "fracnash/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fracnash::subordination {

using spectral::Matrix;
using spectral::SpectralOperator;
using spectral::Vector;

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("stable subordinator: alpha must lie in (0, 1), got " +
                          std::to_string(alpha));
}

bool is_half(double alpha) { return std::abs(alpha - 0.5) < 1e-15; }

// log(sin x / x), accurate near 0.
double log_sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return -x2 * (1.0 / 6.0 + x2 * (1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 / 37800.0)));
  }
  return std::log(std::sin(x) / x);
}

// Kanter's function
//   A(phi) = [sin(a phi)^a sin((1-a) phi)^(1-a) / sin(phi)]^(1/(1-a))
// split as log A(0+) plus the excess log A(phi) - log A(0+), which is
// O(phi^2) and must stay accurate when multiplied by a huge z.
double log_kanter_min(double a) { return (a * std::log(a) + (1.0 - a) * std::log1p(-a)) / (1.0 - a); }

double log_kanter_excess(double a, double phi) {
  if (phi <= 0.0) return 0.0;
  return (a * log_sinc(a * phi) + (1.0 - a) * log_sinc((1.0 - a) * phi) - log_sinc(phi)) / (1.0 - a);
}

// Large-x series: g(x) = (1/pi) sum_k (-1)^{k+1} Gamma(ak+1)/k! sin(pi a k) x^{-ak-1}.
// Only used once x^{-a} is small, where the terms fall off quickly.
double series_density(double a, double x) {
  const double lx = std::log(x);
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double log_mag = std::lgamma(a * k + 1.0) - std::lgamma(k + 1.0) - (a * k + 1.0) * lx;
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * std::sin(kPi * a * k) * std::exp(log_mag);
    sum += term;
    if (std::exp(log_mag) < 1e-18 * std::abs(sum)) break;
  }
  return sum / kPi;
}

double kanter_log_density(double a, double x) {
  const double kappa = a / (1.0 - a);
  const double z = std::exp(-kappa * std::log(x));
  const double log_a_min = log_kanter_min(a);
  const double a_min = std::exp(log_a_min);
  // Integrand A e^{-(A - A_min) z}; beyond phi_up it underflows.
  auto excess = [&](double phi) { return a_min * std::expm1(log_kanter_excess(a, phi)) * z; };
  double phi_up = kPi;
  const double phi_top = kPi * (1.0 - 1e-12);
  if (excess(phi_top) > 745.0)
    phi_up = numerics::bisect([&](double phi) { return excess(phi) - 745.0; }, 0.0, phi_top, 1e-15);
  auto integrand = [&](double phi) {
    const double d = log_kanter_excess(a, phi);
    return std::exp(d - a_min * std::expm1(d) * z);
  };
  const double integral = numerics::integrate(integrand, 0.0, phi_up, 1e-11, 12).value;
  if (!(integral > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(kappa) - std::log(x) / (1.0 - a) - std::log(kPi) + log_a_min - a_min * z +
         std::log(integral);
}

}  // namespace

StableSubordinator::StableSubordinator(double alpha, double t) : alpha_(alpha), t_(t) {
  check_alpha(alpha);
  if (!(t > 0.0) || !std::isfinite(t))
    throw InvalidArgument("stable subordinator: t must be > 0");
  scale_ = std::pow(t, 1.0 / alpha);
}

double standard_log_density(double alpha, double x) {
  check_alpha(alpha);
  if (!(x > 0.0)) throw InvalidArgument("stable density: s must be > 0");
  if (is_half(alpha))
    return -1.5 * std::log(x) - 0.25 / x - std::log(2.0 * std::sqrt(kPi));
  if (!std::isfinite(x)) return -std::numeric_limits<double>::infinity();
  if (std::pow(x, -alpha) < 0.05) {
    const double g = series_density(alpha, x);
    if (g > 0.0) return std::log(g);
  }
  return kanter_log_density(alpha, x);
}

double standard_density(double alpha, double x) { return std::exp(standard_log_density(alpha, x)); }

double stable_log_density(const StableSubordinator& sub, double s) {
  if (!(s > 0.0)) throw InvalidArgument("stable density: s must be > 0");
  if (is_half(sub.alpha())) {
    const double t = sub.t();
    return std::log(t / (2.0 * std::sqrt(kPi))) - 1.5 * std::log(s) - t * t / (4.0 * s);
  }
  return standard_log_density(sub.alpha(), s / sub.scale()) - std::log(sub.scale());
}

double stable_density(const StableSubordinator& sub, double s) {
  return std::exp(stable_log_density(sub, s));
}

namespace {

double default_tolerance(double alpha, double requested) {
  if (requested > 0.0) return requested;
  return is_half(alpha) ? 1e-10 : 1e-8;
}

// Sample u = log s on a uniform grid of step h starting at u0.
struct LogGrid {
  double u0;
  double h;
  std::int64_t count;
};

// Trapezoid sums of e^{-lambda s} p(s) s du on `grid` for each lambda.
// `log_mass` holds log(p(s) s) at the grid nodes.
std::vector<double> transforms(const LogGrid& grid, const std::vector<double>& log_mass,
                               std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size(), 0.0);
  for (std::int64_t q = 0; q < grid.count; ++q) {
    const double s = std::exp(grid.u0 + grid.h * static_cast<double>(q));
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      out[i] += std::exp(log_mass[static_cast<std::size_t>(q)] - lambdas[i] * s);
  }
  for (double& v : out) v *= grid.h;
  return out;
}

}  // namespace

QuadratureRule subordination_rule(const StableSubordinator& sub, std::span<const double> probe_lambdas,
                                  RuleOptions options) {
  const double tol = default_tolerance(sub.alpha(), options.tolerance);
  const double alpha = sub.alpha();
  auto log_mass = [&](double u) { return stable_log_density(sub, std::exp(u)) + u; };

  // Left end: the density vanishes faster than any power as s -> 0.
  const double u_center = std::log(sub.scale());
  const double cut = std::log(tol) - 10.0;
  double u_lo = u_center;
  while (log_mass(u_lo) > cut && u_lo > u_center - 200.0) u_lo -= 0.5;

  // Right end: P(S > s) ~ t s^{-alpha} / Gamma(1 - alpha).  A positive
  // smallest probe lambda kills the tail sooner.
  double u_hi = (std::log(sub.t()) - std::lgamma(1.0 - alpha) - std::log(1e-3 * tol)) / alpha;
  double lambda_min = std::numeric_limits<double>::infinity();
  for (double l : probe_lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l))
      throw InvalidArgument("subordination: probe lambda must be finite and >= 0");
    lambda_min = std::min(lambda_min, l);
  }
  if (lambda_min > 0.0 && std::isfinite(lambda_min))
    u_hi = std::min(u_hi, std::log((40.0 - std::log(tol)) / lambda_min));
  u_hi = std::min(std::max(u_hi, u_center + 2.0), 700.0);
  if (u_lo >= u_hi) u_lo = u_hi - 4.0;

  std::vector<double> probes(probe_lambdas.begin(), probe_lambdas.end());
  if (probes.empty()) probes.push_back(0.0);

  std::int64_t intervals = 32;
  LogGrid grid{u_lo, (u_hi - u_lo) / static_cast<double>(intervals), intervals + 1};
  std::vector<double> lm(static_cast<std::size_t>(grid.count));
  for (std::int64_t q = 0; q < grid.count; ++q)
    lm[static_cast<std::size_t>(q)] = log_mass(grid.u0 + grid.h * static_cast<double>(q));
  std::vector<double> previous = transforms(grid, lm, probes);
  double change = std::numeric_limits<double>::infinity();

  while (true) {
    const std::int64_t finer_count = 2 * intervals + 1;
    if (finer_count > options.max_nodes)
      throw QuadratureError("subordination quadrature did not reach tolerance " +
                                std::to_string(tol) + " within " +
                                std::to_string(options.max_nodes) + " nodes",
                            change, grid.count);
    // Refine: keep the old nodes, add midpoints.
    LogGrid fine{u_lo, grid.h / 2.0, finer_count};
    std::vector<double> lm_fine(static_cast<std::size_t>(finer_count));
    for (std::int64_t q = 0; q < finer_count; ++q) {
      lm_fine[static_cast<std::size_t>(q)] =
          (q % 2 == 0) ? lm[static_cast<std::size_t>(q / 2)]
                       : log_mass(fine.u0 + fine.h * static_cast<double>(q));
    }
    std::vector<double> current = transforms(fine, lm_fine, probes);
    change = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      change = std::max(change, std::abs(current[i] - previous[i]));
    grid = fine;
    lm = std::move(lm_fine);
    intervals *= 2;
    previous = std::move(current);
    // Trapezoid on a smooth rapidly decaying integrand converges
    // geometrically, so the last change bounds the remaining error.
    if (change < tol) break;
  }

  QuadratureRule rule;
  rule.step = grid.h;
  rule.error_estimate = change;
  rule.nodes.resize(static_cast<std::size_t>(grid.count));
  rule.weights.resize(static_cast<std::size_t>(grid.count));
  for (std::int64_t q = 0; q < grid.count; ++q) {
    const double u = grid.u0 + grid.h * static_cast<double>(q);
    rule.nodes[static_cast<std::size_t>(q)] = std::exp(u);
    rule.weights[static_cast<std::size_t>(q)] = grid.h * std::exp(lm[static_cast<std::size_t>(q)]);
  }
  return rule;
}

double laplace_transform(const StableSubordinator& sub, double lambda, RuleOptions options) {
  if (!(lambda >= 0.0)) throw InvalidArgument("laplace_transform: lambda must be >= 0");
  const double probe[] = {lambda};
  const QuadratureRule rule = subordination_rule(sub, probe, options);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    sum += rule.weights[q] * std::exp(-lambda * rule.nodes[q]);
  return sum;
}

double laplace_check(const StableSubordinator& sub, double lambda, RuleOptions options) {
  if (!(lambda > 0.0)) throw InvalidArgument("laplace_check: lambda must be > 0");
  const double exact = std::exp(-sub.t() * std::pow(lambda, sub.alpha()));
  return std::abs(laplace_transform(sub, lambda, options) - exact);
}

namespace {

Matrix assemble(const SpectralOperator& op, const Vector& d) {
  const Matrix& u = op.eigenvectors();
  return u * d.asDiagonal() * u.transpose() * op.space().weights().asDiagonal();
}

}  // namespace

SemigroupResult subordinate_semigroup(const SpectralOperator& op, double alpha, double t,
                                      RuleOptions options) {
  const StableSubordinator sub(alpha, t);
  const Vector& lambda = op.eigenvalues();
  std::vector<double> probes(lambda.data(), lambda.data() + lambda.size());
  const QuadratureRule rule = subordination_rule(sub, probes, options);
  // sum_q w_q e^{-s_q A} diagonalizes in the eigenbasis of A.
  Vector d = Vector::Zero(lambda.size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
      d[i] += rule.weights[q] * std::exp(-rule.nodes[q] * lambda[i]);
  return {assemble(op, d), rule.error_estimate, static_cast<std::int64_t>(rule.nodes.size())};
}

SemigroupResult poisson_semigroup(const SpectralOperator& op, double t, double tolerance) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("poisson_semigroup: t must be > 0");
  const Vector& lambda = op.eigenvalues();
  const double c = t * t / 4.0;
  // With u = e^v the weight e^{-u} u^{-1/2} du becomes exp(-e^v + v/2) dv.
  auto log_weight = [](double v) { return -std::exp(v) + 0.5 * v - 0.5 * std::log(kPi); };
  const double v_hi = std::log(40.0 - std::log(tolerance));
  const double v_lo = 2.0 * (std::log(tolerance) - 8.0);
  const std::int64_t max_nodes = 2048;

  auto sums = [&](std::int64_t intervals) {
    const double h = (v_hi - v_lo) / static_cast<double>(intervals);
    Vector d = Vector::Zero(lambda.size());
    for (std::int64_t q = 0; q <= intervals; ++q) {
      const double v = v_lo + h * static_cast<double>(q);
      const double lw = log_weight(v);
      const double s = c * std::exp(-v);
      for (Eigen::Index i = 0; i < lambda.size(); ++i) d[i] += std::exp(lw - s * lambda[i]);
    }
    return Vector(d * h);
  };

  std::int64_t intervals = 64;
  Vector previous = sums(intervals);
  double change = std::numeric_limits<double>::infinity();
  while (true) {
    if (2 * intervals + 1 > max_nodes)
      throw QuadratureError("poisson quadrature did not reach tolerance", change, intervals + 1);
    intervals *= 2;
    Vector current = sums(intervals);
    change = (current - previous).cwiseAbs().maxCoeff();
    previous = std::move(current);
    if (change < tolerance) break;
  }
  return {assemble(op, previous), change, intervals + 1};
}

Matrix spectral_fractional_semigroup(const SpectralOperator& op, double alpha, double t) {
  return spectral::apply_function(op, spectral::ScalarFunction::fractional_heat(t, alpha));
}

}  // namespace fracnash::subordination
