// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/torus_product.hpp"

#include "fracnash/errors.hpp"
#include "fracnash/quadrature.hpp"
#include "fracnash/subordination.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace fracnash::torus {

namespace {

constexpr double kPi = std::numbers::pi;
// Beyond this argument log theta < 1e-34; the terms are dropped.
constexpr double kThetaCut = 80.0;
constexpr double kExplicitTerms = 256.0;
constexpr double kMaxK = 9.0e18;

// 2 sum_{m>=1} e^{-c m^2} and 2 sum m^2 e^{-c m^2}.
void gaussian_sums(double c, double tol, double& s0, double& s2) {
  s0 = 0.0;
  s2 = 0.0;
  for (double m = 1.0;; m += 1.0) {
    const double term = 2.0 * std::exp(-c * m * m);
    s0 += term;
    s2 += m * m * term;
    if (term <= tol * (1.0 + s0) || term == 0.0) break;
  }
}

void require_gamma(double gamma, const char* who) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidArgument(std::string(who) + ": gamma must be positive");
}

}  // namespace

double theta_direct(double t, double tol) {
  if (!(t > 0.0)) throw InvalidArgument("theta: t must be positive");
  double s0, s2;
  gaussian_sums(t, tol, s0, s2);
  return 1.0 + s0;
}

double theta_dual(double t, double tol) {
  if (!(t > 0.0)) throw InvalidArgument("theta: t must be positive");
  double s0, s2;
  gaussian_sums(kPi * kPi / t, tol, s0, s2);
  return std::sqrt(kPi / t) * (1.0 + s0);
}

double theta(double t, double tol) { return t >= 1.0 ? theta_direct(t, tol) : theta_dual(t, tol); }

double log_theta(double t) {
  if (!(t > 0.0)) throw InvalidArgument("log_theta: t must be positive");
  double s0, s2;
  if (t >= 1.0) {
    gaussian_sums(t, 1e-17, s0, s2);
    return std::log1p(s0);
  }
  gaussian_sums(kPi * kPi / t, 1e-17, s0, s2);
  return 0.5 * std::log(kPi / t) + std::log1p(s0);
}

double dlog_theta(double t) {
  if (!(t > 0.0)) throw InvalidArgument("dlog_theta: t must be positive");
  double s0, s2;
  if (t >= 1.0) {
    gaussian_sums(t, 1e-17, s0, s2);
    return -s2 / (1.0 + s0);
  }
  const double c = kPi * kPi / t;
  gaussian_sums(c, 1e-17, s0, s2);
  return -0.5 / t + (c / t) * s2 / (1.0 + s0);
}

double TorusSpectrum::a(std::uint64_t k) const {
  if (k == 0) throw InvalidArgument("TorusSpectrum::a: k starts at 1");
  return std::pow(static_cast<double>(k), 1.0 / gamma);
}

std::uint64_t counting(const TorusSpectrum& spec, double s) {
  require_gamma(spec.gamma, "counting");
  if (!(s >= 1.0)) return 0;
  const double cap = spec.K > 0 ? static_cast<double>(spec.K) : kMaxK;
  const double guess = std::pow(s, spec.gamma);
  if (guess >= cap) return spec.K > 0 ? spec.K : static_cast<std::uint64_t>(kMaxK);
  auto n = static_cast<std::uint64_t>(std::floor(guess));
  const double inv = 1.0 / spec.gamma;
  while (std::pow(static_cast<double>(n + 1), inv) <= s) ++n;
  while (n > 0 && std::pow(static_cast<double>(n), inv) > s) --n;
  return spec.K > 0 ? std::min(n, spec.K) : n;
}

double log_product_sum(double gamma, double K, double s) {
  require_gamma(gamma, "log_product_sum");
  if (!(s > 0.0)) throw InvalidArgument("log_product_sum: s must be positive");
  K = std::floor(K);
  if (!(K >= 1.0)) return 0.0;
  const double inv = 1.0 / gamma;

  // Closed form while s k^{1/gamma} <= 1/4: log theta(y) = log sqrt(pi/y) up
  // to e^{-4 pi^2}.
  const double k1 = std::min(K, std::floor(std::pow(0.25 / s, gamma)));
  double sum = 0.0;
  if (k1 >= 1.0) sum = 0.5 * k1 * std::log(kPi / s) - 0.5 * inv * std::lgamma(k1 + 1.0);

  const double k_end = std::min(K, k1 + kExplicitTerms);
  for (double k = k1 + 1.0; k <= k_end; k += 1.0) {
    const double y = s * std::pow(k, inv);
    if (y > kThetaCut) return sum;
    sum += log_theta(y);
  }
  if (K <= k_end) return sum;

  // Euler-Maclaurin on k in [a, K].
  const double a = k_end + 1.0;
  const double y_a = s * std::pow(a, inv);
  if (y_a > kThetaCut) return sum;
  const double y_K = s * std::pow(K, inv);
  const double y_top = std::min(y_K, kThetaCut);
  const double jac = gamma * std::pow(s, -gamma);
  const auto integral = numerics::integrate(
      [&](double y) { return std::pow(y, gamma - 1.0) * log_theta(y); }, y_a, y_top, 1e-13, 20);
  sum += jac * integral.value;
  const double h_a = log_theta(y_a);
  const double dh_a = dlog_theta(y_a) * y_a / (gamma * a);
  double h_K = 0.0, dh_K = 0.0;
  if (y_K <= kThetaCut) {
    h_K = log_theta(y_K);
    dh_K = dlog_theta(y_K) * y_K / (gamma * K);
  }
  sum += 0.5 * (h_a + h_K) + (dh_K - dh_a) / 12.0;
  return sum;
}

double truncation_remainder(double gamma, double K, double s) {
  require_gamma(gamma, "truncation_remainder");
  if (!(s > 0.0)) throw InvalidArgument("truncation_remainder: s must be positive");
  K = std::floor(K);
  if (!(K >= 1.0)) return std::numeric_limits<double>::infinity();
  // log theta(y) <= 2 e^{-y} / (1 - e^{-y}) and the terms decrease in k.
  const double y_K = s * std::pow(K, 1.0 / gamma);
  const double upper = boost::math::tgamma(gamma, y_K);
  return 2.0 / (-std::expm1(-y_K)) * gamma * std::pow(s, -gamma) * upper;
}

std::uint64_t tail_rule_truncation(double gamma, double s, double rel_tol) {
  require_gamma(gamma, "tail_rule_truncation");
  if (!(s > 0.0)) throw InvalidArgument("tail_rule_truncation: s must be positive");
  if (!(rel_tol > 0.0)) throw InvalidArgument("tail_rule_truncation: rel_tol must be positive");
  const double k_full = std::min(kMaxK, std::ceil(std::pow(kThetaCut / s, gamma)));
  const double target = rel_tol * log_product_sum(gamma, std::max(1.0, k_full), s);
  auto remainder_at = [&](double log_y) {
    const double k = std::max(1.0, std::ceil(std::pow(std::exp(log_y) / s, gamma)));
    return truncation_remainder(gamma, k, s);
  };
  double lo = std::log(s), hi = std::log(1000.0 + s);
  if (remainder_at(lo) <= target) return 1;
  if (remainder_at(hi) > target)
    throw NumericalError("tail_rule_truncation: tolerance not reachable");
  for (int i = 0; i < 100 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (remainder_at(mid) <= target ? hi : lo) = mid;
  }
  double k = std::max(1.0, std::ceil(std::pow(std::exp(hi) / s, gamma)));
  while (truncation_remainder(gamma, k, s) > target && k < kMaxK) k = std::ceil(k * 1.001 + 1.0);
  if (k >= kMaxK) throw NumericalError("tail_rule_truncation: K exceeds 64-bit range");
  return static_cast<std::uint64_t>(k);
}

LogDensity log_density_at_e(const TorusSpectrum& spec, double t, double rel_tol) {
  require_gamma(spec.gamma, "log_density_at_e");
  if (!(t > 0.0)) throw InvalidArgument("log_density_at_e: t must be positive");
  LogDensity out;
  out.K = spec.K > 0 ? spec.K : tail_rule_truncation(spec.gamma, t, rel_tol);
  const auto k = static_cast<double>(out.K);
  out.value = log_product_sum(spec.gamma, k, t);
  out.remainder = truncation_remainder(spec.gamma, k, t);
  // Relative to the full sum, which lies in [value, value + remainder].
  if (out.remainder > rel_tol * (out.value + out.remainder))
    throw TruncationError("log_density_at_e: truncation remainder " +
                              std::to_string(out.remainder) + " exceeds tolerance",
                          tail_rule_truncation(spec.gamma, t, rel_tol));
  return out;
}

double torus_constant(double gamma) {
  require_gamma(gamma, "torus_constant");
  // u = v^4 on [0, 1] tames the logarithmic singularity at 0.
  const auto near = numerics::integrate(
      [&](double v) {
        if (v == 0.0) return 0.0;
        const double u = v * v * v * v;
        return 4.0 * v * v * v * std::pow(u, gamma - 1.0) * log_theta(u);
      },
      0.0, 1.0, 1e-14, 25);
  const auto far = numerics::integrate(
      [&](double u) { return std::pow(u, gamma - 1.0) * log_theta(u); }, 1.0, kThetaCut, 1e-14, 25);
  return gamma * (near.value + far.value);
}

namespace {

constexpr int kFitPoints = 13;

// Fit abscissae: s^gamma from 0.02 down by factors of sqrt(2).
double fit_point(double gamma, int j) {
  return std::pow(0.02, 1.0 / gamma) * std::pow(2.0, -j / (2.0 * gamma));
}

}  // namespace

std::uint64_t fit_truncation(double gamma) {
  require_gamma(gamma, "fit_truncation");
  return tail_rule_truncation(gamma, fit_point(gamma, kFitPoints - 1), 1e-12);
}

double fitted_small_time_constant(const TorusSpectrum& spec) {
  require_gamma(spec.gamma, "fitted_small_time_constant");
  const double g = spec.gamma;
  constexpr int kPoints = kFitPoints;
  const double K = static_cast<double>(spec.K > 0 ? spec.K : fit_truncation(g));
  Eigen::MatrixXd design(kPoints, 3);
  Eigen::VectorXd rhs(kPoints);
  for (int j = 0; j < kPoints; ++j) {
    const double s = fit_point(g, j);
    const double sg = std::pow(s, g);
    design(j, 0) = 1.0;
    design(j, 1) = sg * std::log(1.0 / s);
    design(j, 2) = sg;
    rhs[j] = sg * log_product_sum(g, K, s);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  return coef[0];
}

double stable_small_time_constant(double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (!(t > 0.0)) throw InvalidArgument("t must be positive");
  const double kappa = alpha / (1.0 - alpha);
  return (1.0 - alpha) * std::pow(alpha, kappa) * std::pow(t, 1.0 / (1.0 - alpha));
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::finite: return "finite";
    case Status::divergent: return "divergent";
    case Status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

bool is_critical(double gamma, double kappa) {
  return std::abs(gamma - kappa) <= 1e-12 * std::max(1.0, kappa);
}

// log int_{s_min}^inf mu_s(e) p_t(s) ds in u = log s.
// The integrand is localized once on the widest range and memoized.
class TailIntegrator {
 public:
  TailIntegrator(double gamma, double K, const subordination::StableSubordinator& sub,
                 double s_min, std::map<double, double>& memo)
      : gamma_(gamma), K_(K), sub_(sub), memo_(memo) {
    const double alpha = sub.alpha();
    u_min_ = std::log(s_min);
    double u_hi =
        (std::log(sub.t()) - std::lgamma(1.0 - alpha) + 14.0 * std::log(10.0)) / alpha;
    u_hi_ = std::max({u_hi, std::log(sub.scale()) + 5.0, u_min_ + 1.0});
    localize();
  }

  // log of the integral over [s_min, inf); `tol` applies to the log scaled
  // by max(1, |log I|).
  double log_integral(double tol) {
    const double lo = lo_;
    const double shift = peak_value_;
    auto f = [&](double u) { return std::exp(psi(u) - shift); };
    // Romberg on 2^m panels of [lo, hi_], starting near the local scale.
    const double span = hi_ - lo;
    long panels = 1;
    while (span / static_cast<double>(panels) > width_ && panels < (1L << 12)) panels *= 2;
    double h = span / static_cast<double>(panels);
    double trap = 0.5 * (f(lo) + f(hi_));
    for (long j = 1; j < panels; ++j) trap += f(lo + static_cast<double>(j) * h);
    trap *= h;
    std::vector<double> row{trap};
    for (int level = 1; level <= 14; ++level) {
      double mid = 0.0;
      for (long j = 0; j < panels; ++j) mid += f(lo + (static_cast<double>(j) + 0.5) * h);
      panels *= 2;
      h /= 2.0;
      std::vector<double> next{0.5 * row[0] + h * mid};
      double factor = 4.0;
      for (std::size_t k = 1; k <= row.size(); ++k, factor *= 4.0)
        next.push_back(next[k - 1] + (next[k - 1] - row[k - 1]) / (factor - 1.0));
      const double change = std::abs(next.back() - row.back());
      row = std::move(next);
      if (level >= 2 && change <= tol * std::max(1.0, std::abs(shift)) * std::abs(row.back()))
        return shift + std::log(row.back());
    }
    throw NumericalError("subordinated_log_density: quadrature did not converge");
  }

 private:
  double psi(double u) {
    const auto it = memo_.find(u);
    if (it != memo_.end()) return it->second;
    const double s = std::exp(u);
    const double v = log_product_sum(gamma_, K_, s) + subordination::stable_log_density(sub_, s) + u;
    memo_.emplace(u, v);
    return v;
  }

  void localize() {
    constexpr int kCoarse = 160;
    constexpr double kDrop = 60.0;
    const double step = (u_hi_ - u_min_) / kCoarse;
    std::vector<double> vals(kCoarse + 1);
    int best = 0;
    for (int i = 0; i <= kCoarse; ++i) {
      vals[i] = psi(u_min_ + i * step);
      if (vals[i] > vals[best]) best = i;
    }
    peak_ = u_min_ + best * step;
    peak_value_ = vals[best];
    if (best > 0 && best < kCoarse) {
      const auto m = numerics::golden_section_max([&](double u) { return psi(u); },
                                                  peak_ - step, peak_ + step, 1e-10, 200);
      if (m.value > peak_value_) {
        peak_ = m.argmax;
        peak_value_ = m.value;
      }
    }
    double d = 1e-4 * std::max(1.0, std::abs(peak_));
    double curv = 0.0;
    for (int i = 0; i < 8 && peak_ - d > u_min_ && peak_ + d < u_hi_; ++i) {
      curv = std::abs(psi(peak_ + d) - 2.0 * peak_value_ + psi(peak_ - d)) / (d * d);
      if (curv * d * d < 0.1) break;
      d /= 10.0;
    }
    width_ = std::clamp(1.0 / std::sqrt(std::max(curv, 1e-12)), 1e-9, 0.5);
    if (best == 0) {
      // Maximum on the cutoff: the decay scale is set by the slope there.
      const double e = 1e-6 * std::max(1.0, std::abs(u_min_));
      const double slope = std::abs(psi(u_min_ + e) - peak_value_) / e;
      width_ = std::min(width_, std::max(1.0 / std::max(slope, 1e-12), 1e-9));
    }

    // Walk out from the peak until the integrand is e^{-60} of its maximum,
    // and keep every coarse node that is not.
    lo_ = peak_;
    while (lo_ > u_min_ && psi(lo_) > peak_value_ - kDrop) lo_ -= 2.0 * width_;
    hi_ = peak_;
    while (hi_ < u_hi_ && psi(hi_) > peak_value_ - kDrop) hi_ += 2.0 * width_;
    for (int i = 0; i <= kCoarse; ++i) {
      if (vals[i] <= peak_value_ - kDrop) continue;
      lo_ = std::min(lo_, u_min_ + (i - 1) * step);
      hi_ = std::max(hi_, u_min_ + (i + 1) * step);
    }
    lo_ = std::max(lo_, u_min_);
    hi_ = std::min(hi_, u_hi_);
  }

  double gamma_;
  double K_;
  const subordination::StableSubordinator& sub_;
  double u_min_ = 0.0, u_hi_ = 0.0;
  double peak_ = 0.0, peak_value_ = 0.0, width_ = 0.5;
  double lo_ = 0.0, hi_ = 0.0;
  std::map<double, double>& memo_;
};

}  // namespace

SubordinatedResult subordinated_log_density(const TorusSpectrum& spec, double alpha, double t) {
  require_gamma(spec.gamma, "subordinated_log_density");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("subordinated_log_density: alpha must lie in (0, 1)");
  if (!(t > 0.0)) throw InvalidArgument("subordinated_log_density: t must be positive");
  SubordinatedResult r;
  const double gamma = spec.gamma;
  const double kappa = alpha / (1.0 - alpha);
  r.profile_exponent = gamma;
  r.stable_exponent = kappa;
  const bool critical = is_critical(gamma, kappa);
  r.c1 = critical ? fitted_small_time_constant(spec) : torus_constant(gamma);
  r.c2 = stable_small_time_constant(alpha, t);

  double s_x;
  if (critical) {
    s_x = 1e-3 * std::min(1.0, std::pow(t, 1.0 / alpha));
  } else {
    // Scale where c1 s^{-gamma} and c2 s^{-kappa} balance.
    const double s_c = std::exp(std::log(r.c2 / r.c1) / (kappa - gamma));
    s_x = gamma < kappa ? s_c / 10.0 : std::min(s_c, 1.0) / 10.0;
  }
  r.cutoffs = {s_x, s_x / 4.0, s_x / 16.0};
  r.K = spec.K > 0 ? spec.K : tail_rule_truncation(gamma, r.cutoffs[2], 1e-10);
  const subordination::StableSubordinator sub(alpha, t);
  // Only growth matters when divergence is expected.
  const bool expect_divergent = critical ? r.c1 > r.c2 : gamma > kappa;
  const double tol = expect_divergent ? 1e-6 : 1e-12;
  std::map<double, double> memo;
  for (int i = 0; i < 3; ++i) {
    TailIntegrator integrator(gamma, static_cast<double>(r.K), sub, r.cutoffs[i], memo);
    r.evidence[i] = integrator.log_integral(tol);
  }
  r.log_value = r.evidence[2];

  if (critical) {
    const double rel = (r.c1 - r.c2) / r.c2;
    if (std::abs(rel) <= 1e-3)
      r.status = Status::inconclusive;
    else
      r.status = rel > 0.0 ? Status::divergent : Status::finite;
    return r;
  }
  const auto& e = r.evidence;
  const bool stable = std::abs(e[2] - e[0]) <= 1e-6 * std::max(1.0, std::abs(e[2]));
  const bool growing = e[1] - e[0] > 1.0 && e[2] - e[1] > 1.0;
  if (gamma < kappa)
    r.status = stable ? Status::finite : Status::inconclusive;
  else
    r.status = growing ? Status::divergent : Status::inconclusive;
  return r;
}

double critical_threshold(const TorusSpectrum& spec, double alpha, double t_lo, double t_hi) {
  require_gamma(spec.gamma, "critical_threshold");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("critical_threshold: alpha must lie in (0, 1)");
  if (!is_critical(spec.gamma, alpha / (1.0 - alpha)))
    throw InvalidArgument("critical_threshold: need alpha / (1 - alpha) == gamma");
  if (!(t_lo > 0.0 && t_hi > t_lo)) throw InvalidArgument("critical_threshold: bad bracket");
  // The classifier at criticality compares c1 with c2(t); c2 is increasing.
  const double c1 = fitted_small_time_constant(spec);
  auto excess = [&](double log_t) {
    return stable_small_time_constant(alpha, std::exp(log_t)) - c1;
  };
  if (excess(std::log(t_lo)) > 0.0 || excess(std::log(t_hi)) < 0.0)
    throw InvalidArgument("critical_threshold: bracket does not contain the threshold");
  return std::exp(numerics::bisect(excess, std::log(t_lo), std::log(t_hi), 1e-14));
}

namespace {

ExponentFit fit_slope(std::vector<double> t, std::vector<double> log_values) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(log_values[i] > 0.0))
      throw NumericalError("exponent fit: log value must be positive at t = " +
                           std::to_string(t[i]));
    design(i, 0) = 1.0;
    design(i, 1) = std::log(1.0 / t[i]);
    rhs[i] = std::log(log_values[i]);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  ExponentFit fit;
  fit.beta = coef[1];
  fit.residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  fit.t = std::move(t);
  fit.log_values = std::move(log_values);
  return fit;
}

}  // namespace

ExponentFit decay_exponent_fit(const TorusSpectrum& spec, double alpha,
                               std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw InvalidArgument("decay_exponent_fit: need two or more times");
  std::vector<double> ts(t_grid.begin(), t_grid.end()), values;
  for (double t : ts) {
    const SubordinatedResult r = subordinated_log_density(spec, alpha, t);
    if (r.status != Status::finite)
      throw NumericalError("decay_exponent_fit: density not finite at t = " + std::to_string(t));
    values.push_back(r.log_value);
  }
  return fit_slope(std::move(ts), std::move(values));
}

ExponentFit profile_exponent_fit(const TorusSpectrum& spec, std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw InvalidArgument("profile_exponent_fit: need two or more times");
  std::vector<double> ts(t_grid.begin(), t_grid.end()), values;
  for (double t : ts) values.push_back(log_density_at_e(spec, t).value);
  return fit_slope(std::move(ts), std::move(values));
}

}  // namespace fracnash::torus
