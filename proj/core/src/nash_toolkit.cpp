// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/nash_toolkit.hpp"

#include "fracnash/errors.hpp"
#include "fracnash/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace fracnash::nash {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be > 0");
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- profiles

DecayProfile::DecayProfile(std::string name, std::function<double(double)> log_m,
                           std::function<double(double)> dlog_m)
    : name_(std::move(name)), log_m_(std::move(log_m)), dlog_m_(std::move(dlog_m)) {}

DecayProfile DecayProfile::power(double n, double c) {
  require_positive(n, "power profile exponent n");
  require_positive(c, "power profile constant");
  return DecayProfile(
      "power(n=" + fmt_double(n) + ")",
      [n, lc = std::log(c)](double t) { return lc - 0.5 * n * std::log(t); },
      [n](double t) { return -0.5 * n / t; });
}

DecayProfile DecayProfile::stretched(double gamma, double k) {
  require_positive(gamma, "stretched profile gamma");
  require_positive(k, "stretched profile constant");
  return DecayProfile(
      "stretched(gamma=" + fmt_double(gamma) + ")",
      [gamma, k](double t) { return k * std::pow(t, -gamma); },
      [gamma, k](double t) { return -gamma * k * std::pow(t, -gamma - 1.0); });
}

DecayProfile DecayProfile::exponential(double rate) {
  require_positive(rate, "exponential profile rate");
  return DecayProfile(
      "exponential", [rate](double t) { return -rate * t; }, [rate](double) { return -rate; });
}

DecayProfile DecayProfile::from_m(std::string name, std::function<double(double)> m,
                                  std::function<double(double)> dm) {
  return DecayProfile(
      std::move(name), [m](double t) { return std::log(m(t)); },
      [m, dm](double t) { return dm(t) / m(t); });
}

double DecayProfile::m(double t) const { return std::exp(log_m_(t)); }

double DecayProfile::dm(double t) const { return m(t) * dlog_m_(t); }

double DecayProfile::derivative_mismatch(std::span<const double> grid) const {
  double worst = 0.0;
  for (double t : grid) {
    const double h = 1e-5 * t;
    const double fd = (big_m(t + h) - big_m(t - h)) / (2.0 * h);
    const double exact = big_m_prime(t);
    worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1e-300));
  }
  return worst;
}

bool DecayProfile::strictly_decreasing_on(std::span<const double> grid) const {
  std::vector<double> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(log_m(g[i]) < log_m(g[i - 1]))) return false;
  return true;
}

double inverse_profile(const DecayProfile& profile, double x) {
  require_positive(x, "profile value x");
  const double lx = std::log(x);
  auto f = [&](double tau) { return profile.log_m(std::exp(tau)) - lx; };
  constexpr double lo = -700.0;
  constexpr double hi = 700.0;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo >= 0.0 && f_hi <= 0.0))
    throw InvalidArgument("theta_from_profile: x = " + fmt_double(x) + " is outside the range of " +
                          profile.name());
  return std::exp(numerics::bisect(f, lo, hi, 1e-14));
}

double theta_from_profile(const DecayProfile& profile, double x) {
  const double t = inverse_profile(profile, x);
  return x * profile.big_m_prime(t);
}

// ---------------------------------------------------------------- rate (be)

double rate_from_profile_log(const DecayProfile& profile, double log_x) {
  if (log_x == -kInf) return 0.0;
  // Objective in tau = log t: e^tau (L - log m(e^{-tau})).
  auto objective = [&](double tau) {
    const double v = std::exp(tau) * (log_x - profile.log_m(std::exp(-tau)));
    return std::isnan(v) ? -kInf : v;
  };
  const double ln10 = std::log(10.0);
  const double tau_lo = -8.0 * ln10;
  const double tau_hi = 8.0 * ln10;
  constexpr int points = 400;
  const double step = (tau_hi - tau_lo) / (points - 1);
  std::vector<double> taus;
  std::vector<double> vals;
  for (int i = 0; i < points; ++i) {
    taus.push_back(tau_lo + step * i);
    vals.push_back(objective(taus.back()));
  }
  auto best_index = [&] {
    return static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  };
  std::size_t best = best_index();
  auto incompatible = [&] {
    return NumericalError("profile incompatible with (be): sup over t is unbounded for " +
                          profile.name());
  };
  // Argmax at an end of the grid: extend by decades before giving up.
  while (best + 1 == taus.size()) {
    const double tau = taus.back() + ln10;
    if (tau > 300.0 * ln10) throw incompatible();
    taus.push_back(tau);
    vals.push_back(objective(tau));
    if (vals.back() == kInf) throw incompatible();
    best = best_index();
  }
  while (best == 0) {
    const double tau = taus.front() - ln10;
    if (tau < -300.0 * ln10) return std::max(0.0, vals.front());
    taus.insert(taus.begin(), tau);
    vals.insert(vals.begin(), objective(tau));
    best = best_index();
  }
  if (!std::isfinite(vals[best])) throw incompatible();
  const auto refined = numerics::golden_section_max(objective, taus[best - 1], taus[best + 1], 1e-14);
  return std::max({0.0, refined.value, vals[best]});
}

double rate_from_profile(const DecayProfile& profile, double x) {
  if (!(x > 1.0)) throw InvalidArgument("rate_from_profile: x must be > 1");
  return rate_from_profile_log(profile, std::log(x));
}

double check_condition_D(const DecayProfile& profile, std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidArgument("check_condition_D: empty grid");
  double best = kInf;
  constexpr int sub = 64;
  for (double t : t_grid) {
    require_positive(t, "condition D grid point");
    const double mt = profile.big_m_prime(t);
    if (!(mt > 0.0))
      throw NumericalError("check_condition_D: M' <= 0 at t = " + fmt_double(t) +
                           " (m is not decreasing)");
    for (int j = 0; j <= sub; ++j) {
      const double u = t * (1.0 + static_cast<double>(j) / sub);
      const double mu = profile.big_m_prime(u);
      if (!(mu > 0.0))
        throw NumericalError("check_condition_D: M' <= 0 at t = " + fmt_double(u) +
                             " (m is not decreasing)");
      best = std::min(best, mu / mt);
    }
  }
  return std::max(best, 0.0);
}

namespace {

double log_ratio_sup(const DecayProfile& p1, const DecayProfile& p2, double c2,
                     std::span<const double> grid) {
  double sup = -kInf;
  for (double t : grid) sup = std::max(sup, p1.log_m(t) - p2.log_m(c2 * t));
  return sup;
}

}  // namespace

std::optional<double> domination_constant(const DecayProfile& p1, const DecayProfile& p2,
                                          double c2, std::span<const double> grid) {
  require_positive(c2, "C2");
  if (grid.empty()) throw InvalidArgument("profile_equivalence: empty grid");
  const double sup = log_ratio_sup(p1, p2, c2, grid);
  if (!std::isfinite(sup)) return std::nullopt;
  // Probe two decades beyond each end: a genuine constant must not move.
  const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
  std::vector<double> ext;
  for (int k = 1; k <= 20; ++k) {
    ext.push_back(*lo_it * std::pow(10.0, -0.1 * k));
    ext.push_back(*hi_it * std::pow(10.0, 0.1 * k));
  }
  const double sup_ext = log_ratio_sup(p1, p2, c2, ext);
  if (!(sup_ext <= sup + std::log(2.0))) return std::nullopt;
  return std::exp(sup);
}

std::optional<Equivalence> profile_equivalence(const DecayProfile& p1, const DecayProfile& p2,
                                               std::span<const double> grid) {
  // Twentieth-decade steps plus exact powers of two, nearest to 1 first.
  std::vector<double> candidates;
  for (int k = -60; k <= 60; ++k) candidates.push_back(std::pow(10.0, k / 20.0));
  for (int j = 1; j <= 10; ++j) {
    candidates.push_back(std::ldexp(1.0, j));
    candidates.push_back(std::ldexp(1.0, -j));
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](double a, double b) {
    return std::abs(std::log(a)) < std::abs(std::log(b));
  });
  for (double c2 : candidates)
    if (auto c1 = domination_constant(p1, p2, c2, grid)) return Equivalence{*c1, c2};
  return std::nullopt;
}

// ---------------------------------------------------------------- RateFunction

RateFunction::RateFunction(std::string name, std::function<double(double)> of_log,
                           std::vector<double> breakpoints)
    : name_(std::move(name)), of_log_(std::move(of_log)), breakpoints_(std::move(breakpoints)) {}

RateFunction RateFunction::constant(double value) {
  return RateFunction("constant(" + fmt_double(value) + ")", [value](double) { return value; });
}

RateFunction RateFunction::power_law(double n) {
  require_positive(n, "power_law n");
  const double c = n / (2.0 * std::numbers::e);
  return RateFunction("power_law(n=" + fmt_double(n) + ")",
                      [n, c](double l) { return c * std::exp(2.0 * l / n); });
}

RateFunction RateFunction::log_power(double c, double p) {
  return RateFunction("log_power(c=" + fmt_double(c) + ",p=" + fmt_double(p) + ")",
                      [c, p](double l) { return l > 0.0 ? c * std::pow(l, p) : 0.0; });
}

RateFunction RateFunction::from_profile(const DecayProfile& profile) {
  return RateFunction("be[" + profile.name() + "]",
                      [profile](double l) { return rate_from_profile_log(profile, l); });
}

RateFunction RateFunction::step(std::vector<double> knots, std::vector<double> values,
                                std::string name) {
  if (knots.size() != values.size() || knots.empty())
    throw InvalidArgument("step rate: knots and values must be non-empty and equal in size");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) throw InvalidArgument("step rate: knots must increase");
    if (values[i] < values[i - 1]) throw InvalidArgument("step rate: values must not decrease");
  }
  std::vector<double> log_knots;
  for (double k : knots) {
    require_positive(k, "step knot");
    log_knots.push_back(std::log(k));
  }
  return RateFunction(
      std::move(name),
      [log_knots, values](double l) {
        const auto it = std::upper_bound(log_knots.begin(), log_knots.end(), l);
        const std::size_t k = it == log_knots.begin() ? 0 : static_cast<std::size_t>(it - log_knots.begin()) - 1;
        return values[k];
      },
      knots);
}

RateFunction RateFunction::from_function(std::string name, std::function<double(double)> b,
                                         std::vector<double> breakpoints) {
  return RateFunction(
      std::move(name), [b](double l) { return b(std::exp(l)); }, std::move(breakpoints));
}

double RateFunction::operator()(double x) const {
  if (!(x >= 0.0)) throw InvalidArgument("rate function argument must be >= 0");
  return of_log_(x == 0.0 ? -kInf : std::log(x));
}

RateFunction RateFunction::pow(double alpha) const {
  auto f = of_log_;
  return RateFunction(
      name_ + "^" + fmt_double(alpha),
      [f, alpha](double l) { return std::pow(std::max(f(l), 0.0), alpha); }, breakpoints_);
}

RateFunction RateFunction::dilated(double b) const {
  require_positive(b, "dilation");
  auto f = of_log_;
  std::vector<double> bp;
  for (double p : breakpoints_) bp.push_back(p / b);
  return RateFunction(
      name_ + "(" + fmt_double(b) + "x)", [f, lb = std::log(b)](double l) { return f(l + lb); },
      std::move(bp));
}

RateFunction RateFunction::scaled(double c) const {
  auto f = of_log_;
  return RateFunction(
      fmt_double(c) + "*" + name_, [f, c](double l) { return c * f(l); }, breakpoints_);
}

RateFunction RateFunction::composed(const ScalarFunction& g) const {
  auto f = of_log_;
  return RateFunction(
      g.name + "o" + name_, [f, g](double l) { return g(f(l)); }, breakpoints_);
}

bool RateFunction::non_decreasing_on(std::span<const double> grid) const {
  std::vector<double> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double a = (*this)(g[i - 1]);
    const double b = (*this)(g[i]);
    if (b < a - 1e-12 * std::max(1.0, std::abs(a))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- certificates

std::string NashCertificate::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# alpha=" << alpha << " rate=" << rate << " ensemble=" << ensemble
     << " infimum=" << ratio_infimum << " scored=" << scored << " degenerate=" << degenerate
     << " a=" << constant_a << " b=" << constant_b << '\n';
  os << "index,family,l1,l2sq,form,denominator,ratio,scored\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SampleRecord& s = samples[i];
    os << i << ',' << ensembles::to_string(s.family) << ',' << s.l1 << ',' << s.l2sq << ','
       << s.form << ',' << s.denominator << ',' << s.ratio << ',' << (s.scored ? 1 : 0) << '\n';
  }
  return os.str();
}

NashCertificate nash_ratio(const SpectralOperator& op, const RateFunction& b, double alpha,
                           const ensembles::Ensemble& ensemble) {
  require_positive(alpha, "nash_ratio alpha");
  if (ensemble.empty()) throw InvalidArgument("nash_ratio: empty ensemble");
  const auto& space = op.space();
  NashCertificate cert;
  cert.alpha = alpha;
  cert.ensemble = ensemble.descriptor;
  cert.rate = b.name();
  cert.ratio_infimum = kInf;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const Vector& f = ensemble.samples[k];
    SampleRecord rec;
    rec.family = ensemble.families[k];
    rec.l1 = space.norm1(f);
    if (rec.l1 > 0.0) {
      const Vector g = f / rec.l1;
      rec.l2sq = space.norm2_squared(g);
      rec.form = spectral::quadratic_form(op, alpha, g);
      rec.denominator = rec.l2sq * std::pow(b(rec.l2sq), alpha);
      if (rec.denominator > 0.0 && std::isfinite(rec.denominator)) {
        rec.ratio = rec.form / rec.denominator;
        rec.scored = true;
        ++cert.scored;
        if (rec.ratio < cert.ratio_infimum) {
          cert.ratio_infimum = rec.ratio;
          cert.witness = g;
        }
      }
    }
    if (!rec.scored) ++cert.degenerate;
    cert.samples.push_back(rec);
  }
  if (cert.scored == 0) throw NumericalError("nash_ratio: every sample is degenerate");
  return cert;
}

// ---------------------------------------------------------------- half power

HalfPowerReport halfpower_integral_check(const SpectralOperator& op, const RateFunction& b,
                                         const Vector& g, double horizon,
                                         std::span<const double> time_grid) {
  require_positive(horizon, "horizon T");
  const auto& space = op.space();
  if (space.norm1(g) > 1.0 + 1e-12)
    throw InvalidArgument("halfpower_integral_check: ||g||_1 must be <= 1");
  const Vector c = op.coefficients(g);
  const Vector sqrt_lambda = op.eigenvalues().cwiseSqrt();

  std::vector<double> times{0.0, horizon};
  for (double t : time_grid)
    if (t > 0.0 && t < horizon) times.push_back(t);
  std::sort(times.begin(), times.end());

  HalfPowerReport report;
  report.base_holds = true;
  report.worst_base_slack = kInf;
  double prev_phi = kInf;
  double v0 = 0.0;
  double vt = 0.0;
  for (double t : times) {
    const Vector ct = (c.array() * (-t * sqrt_lambda.array()).exp()).matrix();
    const double phi = ct.squaredNorm();
    if (phi > prev_phi * (1.0 + 1e-13) + 1e-300)
      throw NumericalError("halfpower_integral_check: ||P_t g||_2 increased on the grid");
    prev_phi = phi;
    const double energy = (ct.array().square() * op.eigenvalues().array()).sum();
    const double slack = energy - phi * b(phi);
    report.worst_base_slack = std::min(report.worst_base_slack, slack);
    if (slack < -1e-12 * std::max(1.0, energy)) report.base_holds = false;
    if (t == 0.0) v0 = phi * phi;
    if (t == horizon) vt = phi * phi;
  }

  // int_{v(T)}^{v(0)} B(sqrt x) dx, split where B may jump.  Boost's GK can
  // stall below 1e-12 when B(sqrt x) loses digits to cancellation.
  std::vector<double> cuts{vt, v0};
  for (double p : b.breakpoints())
    if (p * p > vt && p * p < v0) cuts.push_back(p * p);
  std::sort(cuts.begin(), cuts.end());
  double lhs = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i)
    lhs += numerics::integrate([&](double x) { return b(std::sqrt(x)); }, cuts[i - 1], cuts[i],
                               1e-12, 15)
               .value;
  report.lhs = lhs;
  const double half_form = spectral::quadratic_form(op, 0.5, g);
  report.rhs = half_form * half_form;
  return report;
}

SpectralOperator rho_shift(const SpectralOperator& op, double rho) {
  require_positive(rho, "rho");
  return SpectralOperator(op.space(), (op.eigenvalues().array() + rho).matrix(),
                          op.eigenvectors());
}

// ---------------------------------------------------------------- Jensen

JensenReport jensen_transfer_check(const SpectralOperator& op, const ScalarFunction& lambda,
                                   const ScalarFunction& phi,
                                   const ensembles::Ensemble& ensemble) {
  if (!phi.convex || !phi.non_decreasing)
    throw InvalidArgument("jensen_transfer_check: Phi must be declared convex and non-decreasing");
  if (!lambda.non_decreasing)
    throw InvalidArgument("jensen_transfer_check: Lambda must be declared non-decreasing");
  std::vector<double> grid;
  const double top = 1.1 * std::max(1.0, op.max_eigenvalue());
  for (int i = 0; i <= 64; ++i) grid.push_back(top * i / 64.0);
  if (!spectral::spot_check(phi, grid, 1e-12))
    throw InvalidArgument("jensen_transfer_check: Phi fails its convex/non-decreasing spot check");

  const auto& space = op.space();
  JensenReport report;
  report.transfer_slack = kInf;
  report.jensen_slack = kInf;
  for (const Vector& f : ensemble.samples) {
    const double l1 = space.norm1(f);
    const double l2 = space.norm2(f);
    if (!(l1 > 0.0) || !(l2 > 0.0)) continue;
    ++report.total;
    const Vector g = f / l1;
    const double x = space.norm2_squared(g);
    if (x * lambda(x) <= spectral::quadratic_form(op, 1.0, g)) {
      ++report.applicable;
      const double slack = spectral::spectral_form(op, phi, g) - x * phi(lambda(x));
      report.transfer_slack = std::min(report.transfer_slack, slack);
    }
    const Vector h = f / l2;
    const double jensen =
        spectral::spectral_form(op, phi, h) - phi(spectral::quadratic_form(op, 1.0, h));
    report.jensen_slack = std::min(report.jensen_slack, jensen);
  }
  return report;
}

// ---------------------------------------------------------------- regular variation

RegularVariation smooth_regular_variation(double alpha, const ScalarFunction& ell,
                                          std::span<const double> x_grid) {
  if (!(alpha > 1.0))
    throw NumericalError("smooth_regular_variation: inner integral diverges at 0 for alpha <= 1");
  // With s = x r^{1/(alpha-1)} the double integral becomes
  //   Phi(x) = alpha x^alpha int_0^1 (1 - r^p) l(x r^p) dr,  p = 1/(alpha-1).
  const double p = 1.0 / (alpha - 1.0);
  auto evaluate = [alpha, p, ell](double x) {
    if (x <= 0.0) return 0.0;
    const auto inner = numerics::integrate(
        [&](double r) {
          const double rp = std::pow(r, p);
          return (1.0 - rp) * ell(x * rp);
        },
        0.0, 1.0, 1e-13);
    return alpha * std::pow(x, alpha) * inner.value;
  };
  RegularVariation out;
  out.phi.fn = evaluate;
  out.phi.non_decreasing = true;
  out.phi.convex = true;
  out.phi.name = "regvar(" + fmt_double(alpha) + ")";
  out.grid.assign(x_grid.begin(), x_grid.end());
  std::sort(out.grid.begin(), out.grid.end());
  for (double x : out.grid) {
    if (!(ell(x) > 0.0)) throw InvalidArgument("smooth_regular_variation: l must be positive");
    const double v = evaluate(x);
    out.values.push_back(v);
    out.ratios.push_back(v / (std::pow(x, alpha) * ell(x)));
  }
  out.increasing = true;
  out.convex = true;
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (!(out.values[i] > out.values[i - 1])) out.increasing = false;
  for (std::size_t i = 2; i < out.values.size(); ++i) {
    const double s1 = (out.values[i - 1] - out.values[i - 2]) / (out.grid[i - 1] - out.grid[i - 2]);
    const double s2 = (out.values[i] - out.values[i - 1]) / (out.grid[i] - out.grid[i - 1]);
    if (s2 < s1 - 1e-9 * std::max(1.0, std::abs(s1))) out.convex = false;
  }
  return out;
}

// ---------------------------------------------------------------- ultracontractivity

double nash_tail_integral(const RateFunction& b, double log_y) {
  if (!(b.of_log(log_y) > 0.0)) return kInf;
  auto weak = [&] {
    return NumericalError("B too weak for ultracontractivity: int dx/(x B(x)) diverges for " +
                          b.name());
  };
  // Near part in L = log x, then unit chunks in w = log L.
  const double l_switch = std::max(log_y + 1.0, 1.0);
  double total = numerics::integrate([&](double l) { return 1.0 / b.of_log(l); }, log_y, l_switch,
                                     1e-13)
                     .value;
  auto chunk_integrand = [&](double w) {
    const double l = std::exp(w);
    const double bl = b.of_log(l);
    return bl == kInf ? 0.0 : l / bl;
  };
  double w = std::log(l_switch);
  double prev = -1.0;
  int slow = 0;
  for (int k = 0;; ++k) {
    if (w > 700.0) break;
    const double chunk = numerics::integrate(chunk_integrand, w, w + 1.0, 1e-13).value;
    total += chunk;
    w += 1.0;
    if (prev > 0.0) {
      const double r = chunk / prev;
      if (r >= 0.99) {
        if (++slow >= 5) throw weak();
      } else {
        slow = 0;
      }
      if (r < 0.95 && chunk * r / (1.0 - r) < 1e-10 * total) break;
    }
    if (chunk == 0.0) break;
    prev = chunk;
    if (k > 2000) throw weak();
  }
  if (!std::isfinite(total)) throw weak();
  return total;
}

namespace {

// L with G(L) = tau, G decreasing.
double invert_tail(const RateFunction& b, double tau) {
  auto f = [&](double l) { return nash_tail_integral(b, l) - tau; };
  double lo = -1.0;
  double hi = 1.0;
  while (f(lo) < 0.0) {
    lo *= 2.0;
    if (lo < -1e12) throw NumericalError("ultracontractivity: bound below representable range");
  }
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("ultracontractivity: bound above representable range");
  }
  return numerics::bisect(f, lo, hi, 1e-15);
}

}  // namespace

UltraBound ultracontractivity_from_nash(const RateFunction& b, double t) {
  require_positive(t, "time t");
  // Fails early on a divergent tail.
  (void)nash_tail_integral(b, 1.0);
  UltraBound out;
  out.log_l1_to_l2_sq = invert_tail(b, 2.0 * t);
  out.log_l1_to_inf = invert_tail(b, t);
  std::ostringstream os;
  os << std::setprecision(17) << "||T_t||_{1->2}^2 <= U(t) = G^{-1}(2t), log U(" << t
     << ") = " << out.log_l1_to_l2_sq << "; ||T_t||_{1->inf} <= ||T_{t/2}||_{1->2}^2 <= U(t/2), log = "
     << out.log_l1_to_inf;
  out.composition = os.str();
  return out;
}

// ---------------------------------------------------------------- Bernstein probe

BernsteinStats bernstein_explore(const SpectralOperator& op, const ScalarFunction& g,
                                 const RateFunction& b, const ensembles::Ensemble& ensemble) {
  const auto& space = op.space();
  std::vector<double> ratios;
  BernsteinStats stats;
  stats.infimum = kInf;
  for (const Vector& f : ensemble.samples) {
    const double l1 = space.norm1(f);
    if (!(l1 > 0.0)) continue;
    const Vector h = f / l1;
    const double x = space.norm2_squared(h);
    const double den = x * g(b(x));
    if (!(den > 0.0) || !std::isfinite(den)) continue;
    const double r = spectral::spectral_form(op, g, h) / den;
    ratios.push_back(r);
    if (r < stats.infimum) {
      stats.infimum = r;
      stats.witness = h;
    }
  }
  stats.scored = ratios.size();
  if (ratios.empty()) return stats;
  std::sort(ratios.begin(), ratios.end());
  stats.median = ratios[ratios.size() / 2];
  stats.maximum = ratios.back();
  return stats;
}

// ---------------------------------------------------------------- concrete rates

RateFunction empirical_rate(const SpectralOperator& op, std::span<const double> s_grid) {
  if (s_grid.empty()) throw InvalidArgument("empirical_rate: empty time grid");
  std::vector<std::pair<double, double>> samples;  // (s, log m(s))
  for (double s : s_grid) {
    require_positive(s, "empirical_rate time");
    samples.emplace_back(
        s, std::log(spectral::norm_1_to_inf(spectral::heat_semigroup(op, s), op.space())));
  }
  return RateFunction("empirical", [samples](double l) {
    double best = 0.0;
    for (auto [s, lm] : samples) best = std::max(best, (l - lm) / s);
    return best;
  });
}

RateFunction spectral_gap_rate(const SpectralOperator& op) {
  if (op.size() < 2) throw InvalidArgument("spectral_gap_rate: need at least two points");
  const Vector u0 = op.eigenvectors().col(0);
  if (op.eigenvalues()[0] > 1e-10 || (u0.array() - u0[0]).abs().maxCoeff() > 1e-8 * u0.cwiseAbs().maxCoeff())
    throw InvalidArgument("spectral_gap_rate: the kernel of A must be the constants");
  const double gap = op.eigenvalues()[1];
  const double mass = op.space().total_mass();
  return RateFunction(
      "gap(" + fmt_double(gap) + ")",
      [gap, mass](double l) { return gap * std::max(0.0, 1.0 - std::exp(-l) / mass); },
      {1.0 / mass});
}

}  // namespace fracnash::nash
