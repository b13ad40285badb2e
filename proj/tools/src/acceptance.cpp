// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/cli/acceptance.hpp"

#include "fracnash/cli/parallel.hpp"
#include "fracnash/cli/report.hpp"
#include "fracnash/ensembles.hpp"
#include "fracnash/errors.hpp"
#include "fracnash/log_sobolev.hpp"
#include "fracnash/nash_toolkit.hpp"
#include "fracnash/operator_gallery.hpp"
#include "fracnash/ou_model.hpp"
#include "fracnash/spectral_core.hpp"
#include "fracnash/subordination.hpp"
#include "fracnash/torus_product.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace fracnash::cli {

namespace {

using spectral::Matrix;
using spectral::Vector;
using Row = std::vector<CsvTable::Cell>;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

struct Ctx {
  int id;
  std::filesystem::path dir;
  std::uint64_t seed;
  CriterionResult* result;

  void emit(const std::string& name, const CsvTable& table) const {
    table.write(dir / name);
    result->files.push_back(name);
  }
  std::uint64_t stream(std::uint64_t k) const { return seed + 7919u * id + k; }
};

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return g;
}

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ------------------------------------------------------------------ 1

void route_equivalence(const Ctx& ctx) {
  const auto op = gallery::build(gallery::GeneratorSpec::cycle(64));
  CsvTable table({"alpha", "t", "route_deviation", "poisson_deviation", "nodes", "bound"});
  double worst = 0.0;
  double worst_half = 0.0;
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    for (double t : {0.1, 1.0, 10.0}) {
      const auto quad = subordination::subordinate_semigroup(op, alpha, t);
      const Matrix ref = subordination::spectral_fractional_semigroup(op, alpha, t);
      const double dev = max_abs_diff(quad.matrix, ref);
      double pdev = std::numeric_limits<double>::quiet_NaN();
      double bound = 1e-6;
      if (alpha == 0.5) {
        const auto pois = subordination::poisson_semigroup(op, t);
        pdev = max_abs_diff(pois.matrix, ref);
        bound = 1e-8;
        worst_half = std::max({worst_half, dev, pdev});
      }
      worst = std::max(worst, dev);
      table.add(Row{alpha, t, dev, pdev, quad.nodes, bound});
    }
  }
  ctx.emit("c01_route_equivalence.csv", table);
  ctx.result->passed = worst <= 1e-6 && worst_half <= 1e-8;
  ctx.result->detail = "max_dev=" + sci(worst) + " alpha_half_max=" + sci(worst_half);
}

// ------------------------------------------------------------------ 2

void stable_density_oracle(const Ctx& ctx) {
  CsvTable table({"alpha", "t", "lambda", "deviation", "bound"});
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.3, 0.5, 0.7}) {
    const double bound = alpha == 0.5 ? 1e-8 : 1e-6;
    for (double t : {0.5, 2.0}) {
      const subordination::StableSubordinator sub(alpha, t);
      for (double lambda : {0.1, 1.0, 10.0}) {
        const double dev = subordination::laplace_check(sub, lambda);
        ok = ok && dev <= bound;
        worst = std::max(worst, dev);
        table.add(Row{alpha, t, lambda, dev, bound});
      }
    }
  }
  ctx.emit("c02_stable_density.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = "max_dev=" + sci(worst);
}

// ------------------------------------------------------------------ 3

void rate_closed_forms(const Ctx& ctx) {
  CsvTable table({"family", "parameter", "x", "computed", "closed_form", "rel_error"});
  double worst = 0.0;
  const double xs[] = {2.0, 5.0, 10.0};
  for (double n : {2.0, 4.0}) {
    const auto profile = nash::DecayProfile::power(n);
    for (double lx : xs) {
      const double x = std::exp(lx);
      const double got = nash::rate_from_profile(profile, x);
      const double want = n / (2.0 * std::numbers::e) * std::pow(x, 2.0 / n);
      const double rel = std::abs(got - want) / want;
      worst = std::max(worst, rel);
      table.add(Row{std::string("power"), n, x, got, want, rel});
    }
  }
  for (double gamma : {1.0, 2.0}) {
    const auto profile = nash::DecayProfile::stretched(gamma);
    for (double lx : xs) {
      const double x = std::exp(lx);
      const double got = nash::rate_from_profile(profile, x);
      const double want =
          gamma * std::pow(1.0 + gamma, -(1.0 + 1.0 / gamma)) * std::pow(lx, 1.0 + 1.0 / gamma);
      const double rel = std::abs(got - want) / want;
      worst = std::max(worst, rel);
      table.add(Row{std::string("stretched"), gamma, x, got, want, rel});
    }
  }
  ctx.emit("c03_rate_closed_forms.csv", table);
  ctx.result->passed = worst <= 1e-5;
  ctx.result->detail = "max_rel=" + sci(worst);
}

// ------------------------------------------------------------------ 4

// Diagonal generator on n points with masses 2^{-i} and eigenvalues 2^i.
spectral::SpectralOperator weighted_diagonal(int n) {
  Vector w(n), lambda(n);
  for (int i = 0; i < n; ++i) {
    w[i] = std::ldexp(1.0, -i);
    lambda[i] = std::ldexp(1.0, i);
  }
  Matrix u = w.cwiseSqrt().cwiseInverse().asDiagonal();
  return spectral::SpectralOperator(spectral::MeasureSpace(w), lambda, u);
}

// 0.8 times the non-decreasing minorant of binned sample minima of
// (Ag, g) / ||g||_2^2, g = f / ||f||_1.
nash::RateFunction oracle_base_rate(const spectral::SpectralOperator& op,
                                    const ensembles::Ensemble& oracle) {
  const auto& space = op.space();
  std::vector<double> xs, rs;
  xs.reserve(oracle.size());
  rs.reserve(oracle.size());
  for (const Vector& f : oracle.samples) {
    const Vector g = f / space.norm1(f);
    const double x = space.norm2_squared(g);
    xs.push_back(x);
    rs.push_back(spectral::quadratic_form(op, 1.0, g) / x);
  }
  const double lo = *std::min_element(xs.begin(), xs.end());
  const double hi = *std::max_element(xs.begin(), xs.end());
  constexpr int bins = 48;
  std::vector<double> mins(bins, kInf);
  const double width = std::log(hi / lo) / bins;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const int k = std::min(bins - 1, static_cast<int>(std::log(xs[j] / lo) / width));
    mins[k] = std::min(mins[k], rs[j]);
  }
  for (int k = bins - 2; k >= 0; --k) mins[k] = std::min(mins[k], mins[k + 1]);
  std::vector<double> knots(bins), values(bins);
  for (int k = 0; k < bins; ++k) {
    knots[k] = lo * std::exp(width * k);
    values[k] = 0.8 * mins[k];
  }
  return nash::RateFunction::step(std::move(knots), std::move(values), "oracle-base");
}

void square_transfer(const Ctx& ctx) {
  CsvTable table({"n", "stage", "epsilon", "min_slack", "bound", "samples"});
  bool ok = true;
  double worst_transfer = kInf;
  double worst_base = kInf;
  double worst_iter = kInf;
  for (int n : {4, 8}) {
    const auto op = weighted_diagonal(n);
    const auto& space = op.space();
    const auto oracle = ensembles::spiky_nonneg(n, 100000, ctx.stream(n));
    const auto b = oracle_base_rate(op, oracle);
    const auto fresh = ensembles::spiky_nonneg(n, 10000, ctx.stream(100 + n));

    const auto base = nash::nash_ratio(op, b, 1.0, fresh);
    worst_base = std::min(worst_base, base.ratio_infimum);
    ok = ok && base.ratio_infimum >= 1.0;
    table.add(Row{std::int64_t{n}, std::string("base_ratio"), 0.0, base.ratio_infimum, 1.0,
                  as_int(base.scored)});

    for (double eps : {0.25, 0.5, 0.75}) {
      double worst = kInf;
      for (const Vector& f : fresh.samples) {
        const Vector g = f / space.norm1(f);
        const double x = space.norm2_squared(g);
        const double lhs = std::sqrt(1.0 - eps * eps) * x * std::sqrt(b(eps * x));
        worst = std::min(worst, spectral::quadratic_form(op, 0.5, g) - lhs);
      }
      worst_transfer = std::min(worst_transfer, worst);
      ok = ok && worst >= -1e-8;
      table.add(Row{std::int64_t{n}, std::string("transfer"), eps, worst, -1e-8,
                    as_int(fresh.size())});
    }

    // Second application, on A^{1/2} with the transferred rate at eps = 1/2.
    const double eps = 0.5;
    const double a2 = std::pow(1.0 - eps * eps, 0.75);
    const auto iter = nash::nash_ratio(op, b.dilated(eps * eps), 0.25, fresh);
    worst_iter = std::min(worst_iter, iter.ratio_infimum - a2);
    ok = ok && iter.ratio_infimum >= a2;
    table.add(Row{std::int64_t{n}, std::string("iterated_ratio"), eps, iter.ratio_infimum, a2,
                  as_int(iter.scored)});
  }
  ctx.emit("c04_square_transfer.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = "base_inf=" + sci(worst_base) + " transfer_min_slack=" +
                       sci(worst_transfer) + " iterated_margin=" + sci(worst_iter);
}

// ------------------------------------------------------------------ 5

void integral_inequality(const Ctx& ctx) {
  CsvTable table({"case", "sample", "lhs", "rhs", "rhs_minus_lhs", "base_holds"});
  const auto grid = log_grid(1e-4, 100.0, 200);

  const spectral::SpectralOperator point(spectral::MeasureSpace::uniform(1), Vector::Constant(1, 2.0),
                                         Matrix::Identity(1, 1));
  const auto exact = nash::halfpower_integral_check(point, nash::RateFunction::constant(2.0),
                                                    Vector::Ones(1), 100.0, grid);
  const double equality_gap = std::abs(exact.lhs - exact.rhs);
  table.add(Row{std::string("one_point"), std::int64_t{0}, exact.lhs, exact.rhs,
                exact.rhs - exact.lhs, std::string(exact.base_holds ? "true" : "false")});

  const auto op = gallery::build(gallery::GeneratorSpec::cycle(32));
  const auto b = nash::spectral_gap_rate(op);
  std::mt19937_64 rng(ctx.stream(0));
  std::normal_distribution<double> normal;
  double worst = kInf;
  bool base = true;
  for (int j = 0; j < 50; ++j) {
    Vector g(op.size());
    for (auto& v : g) v = normal(rng);
    g /= op.space().norm1(g);
    const auto r = nash::halfpower_integral_check(op, b, g, 50.0, grid);
    worst = std::min(worst, r.rhs - r.lhs);
    base = base && r.base_holds;
    table.add(Row{std::string("cycle32"), std::int64_t{j}, r.lhs, r.rhs, r.rhs - r.lhs,
                  std::string(r.base_holds ? "true" : "false")});
  }
  ctx.emit("c05_integral_inequality.csv", table);
  ctx.result->passed = equality_gap <= 1e-12 && worst >= -1e-8 && base;
  ctx.result->detail = "equality_gap=" + sci(equality_gap) + " cycle_min_slack=" + sci(worst) +
                       (base ? "" : " base_rate_violated");
}

// ------------------------------------------------------------------ 6

void jensen_exactness(const Ctx& ctx) {
  CsvTable table({"operator", "phi", "jensen_slack", "transfer_slack", "applicable", "samples"});
  std::mt19937_64 rng(ctx.stream(0));
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> spectrum(16);
  for (auto& v : spectrum) v = u(rng);
  const std::pair<std::string, spectral::SpectralOperator> ops[] = {
      {"diagonal16", gallery::build(gallery::GeneratorSpec::diagonal(spectrum))},
      {"cycle32", gallery::build(gallery::GeneratorSpec::cycle(32))}};
  const spectral::ScalarFunction phis[] = {
      spectral::ScalarFunction::power(2.0), spectral::ScalarFunction::power(3.0),
      {[](double x) { return std::exp(x); }, true, true, "exp"}};
  double worst = kInf;
  std::uint64_t k = 1;
  for (const auto& [name, op] : ops) {
    const double lmin = op.eigenvalues().minCoeff();
    const spectral::ScalarFunction lambda{[lmin](double) { return lmin; }, true, true,
                                          "lambda_min"};
    const auto samples = ensembles::unit_sphere(op.space(), 1000, ctx.stream(k++));
    for (const auto& phi : phis) {
      const auto r = nash::jensen_transfer_check(op, lambda, phi, samples);
      worst = std::min(worst, r.jensen_slack);
      table.add(Row{name, phi.name, r.jensen_slack, r.transfer_slack, as_int(r.applicable),
                    as_int(r.total)});
    }
  }
  ctx.emit("c06_jensen.csv", table);
  ctx.result->passed = worst >= -1e-12;
  ctx.result->detail = "min_slack=" + sci(worst);
}

// ------------------------------------------------------------------ 7

void ultracontractivity(const Ctx& ctx) {
  CsvTable table({"family", "parameter", "t", "log_l1_to_inf", "fitted_exponent", "expected"});
  bool ok = true;
  std::ostringstream detail;
  for (double n : {2.0, 4.0}) {
    const auto b = nash::RateFunction::from_profile(nash::DecayProfile::power(n));
    const auto ts = log_grid(0.01, 1.0, 5);
    std::vector<double> x, y;
    for (double t : ts) {
      x.push_back(std::log(t));
      y.push_back(nash::ultracontractivity_from_nash(b, t).log_l1_to_inf);
    }
    const double s = -slope(x, y);
    ok = ok && std::abs(s - n / 2) <= 0.01 * n / 2;
    detail << "power" << n << "=" << sci(s) << " ";
    for (std::size_t i = 0; i < ts.size(); ++i)
      table.add(Row{std::string("power"), n, ts[i], y[i], s, n / 2});
  }
  for (double gamma : {1.0, 2.0}) {
    const auto b = nash::RateFunction::from_profile(nash::DecayProfile::stretched(gamma));
    const auto ts = log_grid(1e-3, 1e-2, 5);
    std::vector<double> x, y, raw;
    for (double t : ts) {
      const double l = nash::ultracontractivity_from_nash(b, t).log_l1_to_inf;
      raw.push_back(l);
      x.push_back(std::log(1.0 / t));
      y.push_back(std::log(l));
    }
    const double s = slope(x, y);
    ok = ok && std::abs(s - gamma) <= 0.03 * gamma;
    detail << "stretched" << gamma << "=" << sci(s) << " ";
    for (std::size_t i = 0; i < ts.size(); ++i)
      table.add(Row{std::string("stretched"), gamma, ts[i], raw[i], s, gamma});
  }
  bool raised = false;
  try {
    (void)nash::ultracontractivity_from_nash(nash::RateFunction::log_power(1.0, 1.0), 1.0);
  } catch (const NumericalError& e) {
    raised = std::string(e.what()).find("B too weak") != std::string::npos;
  }
  table.add(Row{std::string("log"), 1.0, 1.0, std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()});
  ok = ok && raised;
  detail << "log_rate_rejected=" << (raised ? "yes" : "no");
  ctx.emit("c07_ultracontractivity.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = detail.str();
}

// ------------------------------------------------------------------ 8

void condition_d(const Ctx& ctx) {
  CsvTable table({"family", "parameter", "c", "expected", "abs_error"});
  const auto grid = log_grid(1e-3, 1e3, 1000);
  double worst = 0.0;
  for (double n : {2.0, 4.0}) {
    const double c = nash::check_condition_D(nash::DecayProfile::power(n), grid);
    worst = std::max(worst, std::abs(c - 0.5));
    table.add(Row{std::string("power"), n, c, 0.5, std::abs(c - 0.5)});
  }
  for (double gamma : {1.0, 2.0}) {
    const double c = nash::check_condition_D(nash::DecayProfile::stretched(gamma), grid);
    const double want = std::pow(2.0, -(gamma + 1.0));
    worst = std::max(worst, std::abs(c - want));
    table.add(Row{std::string("stretched"), gamma, c, want, std::abs(c - want)});
  }
  ctx.emit("c08_condition_d.csv", table);
  ctx.result->passed = worst <= 1e-3;
  ctx.result->detail = "max_abs_error=" + sci(worst);
}

// ------------------------------------------------------------------ 9

void torus_trichotomy(const Ctx& ctx) {
  using torus::Status;
  CsvTable table({"check", "alpha", "t", "K", "status", "value", "expected"});
  const torus::TorusSpectrum spec{1.0, 0};
  bool ok = true;
  std::ostringstream detail;

  for (double alpha : {0.3, 0.75}) {
    const Status want = alpha < 0.5 ? Status::divergent : Status::finite;
    for (double t : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
      const auto r = torus::subordinated_log_density(spec, alpha, t);
      ok = ok && r.status == want;
      table.add(Row{std::string("regime"), alpha, t, as_int(r.K), std::string(to_string(r.status)),
                    r.log_value, std::string(to_string(want))});
    }
  }

  const double grid[] = {0.005, 0.01, 0.02, 0.05};
  const auto fit = torus::decay_exponent_fit(spec, 0.75, grid);
  const bool beta_ok = std::abs(fit.beta - 2.0) <= 0.15 * 2.0;
  ok = ok && beta_ok;
  detail << "beta=" << sci(fit.beta);
  table.add(Row{std::string("beta"), 0.75, std::numeric_limits<double>::quiet_NaN(),
                std::int64_t{0}, std::string(beta_ok ? "ok" : "off"), fit.beta, std::string("2")});

  const double t_hat = torus::critical_threshold(spec, 0.5, 0.1, 100.0);
  const auto above = torus::subordinated_log_density(spec, 0.5, 1.05 * t_hat);
  const auto below = torus::subordinated_log_density(spec, 0.5, 0.95 * t_hat);
  ok = ok && above.status == Status::finite && below.status == Status::divergent;
  table.add(Row{std::string("threshold"), 0.5, t_hat, std::int64_t{0}, std::string("threshold"),
                t_hat, std::string("")});
  table.add(Row{std::string("above"), 0.5, 1.05 * t_hat, as_int(above.K),
                std::string(to_string(above.status)), above.log_value, std::string("finite")});
  table.add(Row{std::string("below"), 0.5, 0.95 * t_hat, as_int(below.K),
                std::string(to_string(below.status)), below.log_value, std::string("divergent")});

  const std::uint64_t k0 = torus::fit_truncation(1.0);
  const double t1 = torus::critical_threshold({1.0, k0}, 0.5, 0.1, 100.0);
  const double t2 = torus::critical_threshold({1.0, 2 * k0}, 0.5, 0.1, 100.0);
  const double drift = std::abs(t2 - t1) / t1;
  ok = ok && drift <= 0.1;
  table.add(Row{std::string("threshold_K"), 0.5, t1, as_int(k0), std::string("threshold"), t1,
                std::string("")});
  table.add(Row{std::string("threshold_2K"), 0.5, t2, as_int(2 * k0), std::string("threshold"), t2,
                std::string("")});
  detail << " t_hat=" << sci(t_hat) << " above=" << to_string(above.status)
         << " below=" << to_string(below.status) << " K_drift=" << sci(drift);

  ctx.emit("c09_torus_trichotomy.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = detail.str();
}

// ------------------------------------------------------------------ 10

void torus_small_time(const Ctx& ctx) {
  CsvTable table({"gamma", "t", "log_log_density", "fitted_slope", "rel_error"});
  const double grid[] = {1e-4, 1e-3, 1e-2};
  bool ok = true;
  std::ostringstream detail;
  for (double gamma : {1.0, 2.0}) {
    const auto fit = torus::profile_exponent_fit({gamma, 0}, grid);
    const double rel = std::abs(fit.beta - gamma) / gamma;
    ok = ok && rel <= 0.1;
    if (gamma > 1.0) detail << " ";
    detail << "gamma" << gamma << "=" << sci(fit.beta);
    for (std::size_t i = 0; i < fit.t.size(); ++i)
      table.add(Row{gamma, fit.t[i], fit.log_values[i], fit.beta, rel});
  }
  ctx.emit("c10_torus_small_time.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = detail.str();
}

// ------------------------------------------------------------------ 11

void ou_suite(const Ctx& ctx) {
  CsvTable table({"check", "n", "value", "bound"});
  bool ok = true;
  std::ostringstream detail;
  const ou::HermiteModel model(16);

  std::mt19937_64 rng(ctx.stream(0));
  std::normal_distribution<double> normal;
  double parseval = 0.0;
  for (int j = 0; j < 100; ++j) {
    Vector c(model.size());
    for (auto& v : c) v = normal(rng);
    parseval = std::max(parseval, ou::parseval_defect(model, c));
  }
  ok = ok && parseval <= 1e-9;
  table.add(Row{std::string("parseval_defect"), std::int64_t{16}, parseval, 1e-9});

  ensembles::EnsembleSpec es;
  es.per_family = 125;
  es.seed = ctx.stream(1);
  const auto ensemble = ensembles::generate(model.op(), es);
  const auto lsi = ou::ou_lsi_check(model, ensemble);
  ok = ok && lsi.min_slack >= -1e-9 && lsi.count == 500;
  table.add(Row{std::string("lsi_min_slack"), std::int64_t{16}, lsi.min_slack, -1e-9});

  const auto cert = ou::ou_log_nash_check(model, 1.0, ensemble);
  ok = ok && cert.ratio_infimum >= 0.5;
  table.add(Row{std::string("log_nash_infimum"), std::int64_t{16}, cert.ratio_infimum, 0.5});

  ou::ProbeOptions exp_only;
  exp_only.random_samples = 0;
  const int ns[] = {16, 64};
  const auto growth = ou::hypercontractivity_probe(ns, 0.5, 0.1, exp_only);
  const double growth_ratio = growth[1].ratio / growth[0].ratio;
  ok = ok && growth_ratio > 1.5;
  for (const auto& row : growth)
    table.add(Row{std::string("fractional_l2_to_l4"), std::int64_t{row.n}, row.ratio,
                  std::numeric_limits<double>::quiet_NaN()});
  table.add(Row{std::string("growth_64_over_16"), std::int64_t{64}, growth_ratio, 1.5});

  ou::ProbeOptions mixed;
  mixed.seed = ctx.stream(2);
  const int n32[] = {32};
  const double t_hyper = 1.01 * std::log(std::sqrt(3.0));
  const auto hyper = ou::hypercontractivity_probe(n32, 1.0, t_hyper, mixed);
  ok = ok && hyper[0].ratio <= 1.0 + 1e-6;
  table.add(Row{std::string("nelson_l2_to_l4"), std::int64_t{32}, hyper[0].ratio, 1.0 + 1e-6});

  detail << "parseval=" << sci(parseval) << " lsi_slack=" << sci(lsi.min_slack)
         << " log_nash=" << sci(cert.ratio_infimum) << " growth=" << sci(growth_ratio)
         << " nelson=" << sci(hyper[0].ratio);
  ctx.emit("c11_ou_suite.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = detail.str();
}

// ------------------------------------------------------------------ 12

void truncation_machinery(const Ctx& ctx) {
  CsvTable table({"check", "value", "bound", "samples"});
  const auto spec = gallery::GeneratorSpec::cycle(32);
  const auto space = gallery::measure(spec);
  std::mt19937_64 rng(ctx.stream(0));
  std::uniform_real_distribution<double> scale_exp(-8.0, 8.0);

  // Spiky shapes rescaled over several decades.
  auto shapes = ensembles::spiky_nonneg(32, 1000, ctx.stream(1));
  for (auto& f : shapes.samples) f *= std::exp2(scale_exp(rng));

  double recon = 0.0;
  double energy_slack = kInf;
  double markov = kInf;
  for (const Vector& f : shapes.samples) {
    recon = std::max(recon, (logsob::reconstruct(f, -20, 20) - f).cwiseAbs().maxCoeff());
    energy_slack = std::min(energy_slack, logsob::truncation_energy_check(spec, f).slack);
    markov = std::min(markov, logsob::markov_step_slack(f, space));
  }
  const bool ok = recon <= std::ldexp(1.0, -20) && energy_slack >= -1e-12 && markov >= -1e-13;
  table.add(Row{std::string("reconstruction_error"), recon, std::ldexp(1.0, -20),
                as_int(shapes.size())});
  table.add(Row{std::string("energy_min_slack"), energy_slack, -1e-12, as_int(shapes.size())});
  table.add(Row{std::string("markov_min_slack"), markov, -1e-13, as_int(shapes.size())});
  ctx.emit("c12_truncation.csv", table);
  ctx.result->passed = ok;
  ctx.result->detail = "recon=" + sci(recon) + " energy_slack=" + sci(energy_slack) +
                       " markov_slack=" + sci(markov);
}

// ------------------------------------------------------------------ 13

bool same_bytes(const std::filesystem::path& a, const std::filesystem::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  return std::equal(std::istreambuf_iterator<char>(fa), std::istreambuf_iterator<char>(),
                    std::istreambuf_iterator<char>(fb), std::istreambuf_iterator<char>());
}

std::vector<CriterionResult> run_range(const AcceptanceOptions& options, int first, int last) {
  std::vector<CriterionResult> out(last - first + 1);
  parallel_for(out.size(), options.jobs,
               [&](std::size_t i) { out[i] = run_criterion(first + static_cast<int>(i), options); });
  return out;
}

void compare_runs(const std::vector<CriterionResult>& first, const std::filesystem::path& a,
                  const std::filesystem::path& b, const AcceptanceOptions& rerun_options,
                  CriterionResult& result) {
  const auto second = run_range(rerun_options, 1, kCriterionCount - 1);
  CsvTable table({"file", "identical"});
  std::size_t files = 0, mismatched = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (const auto& name : first[i].files) {
      const bool same = same_bytes(a / name, b / name);
      ++files;
      if (!same) ++mismatched;
      table.add(Row{name, std::string(same ? "true" : "false")});
    }
    if (first[i].passed != second[i].passed || first[i].detail != second[i].detail) ++mismatched;
  }
  table.write(a / "c13_determinism.csv");
  result.files.push_back("c13_determinism.csv");
  result.passed = files > 0 && mismatched == 0;
  result.detail = std::to_string(files) + " files compared, " + std::to_string(mismatched) +
                  " mismatched";
}

void determinism_standalone(const AcceptanceOptions& options, CriterionResult& result) {
  AcceptanceOptions a = options, b = options;
  a.out_dir = options.out_dir / "determinism" / "first";
  b.out_dir = options.out_dir / "determinism" / "second";
  const auto first = run_range(a, 1, kCriterionCount - 1);
  compare_runs(first, a.out_dir, b.out_dir, b, result);
  std::filesystem::rename(a.out_dir / "c13_determinism.csv",
                          options.out_dir / "c13_determinism.csv");
}

}  // namespace

std::string criterion_title(int id) {
  static const char* const titles[] = {"",
                                       "route equivalence",
                                       "stable-density oracle",
                                       "rate-function closed forms",
                                       "square-root transfer",
                                       "half-power integral inequality",
                                       "Jensen exactness",
                                       "ultracontractivity integration",
                                       "condition (D) constants",
                                       "torus trichotomy",
                                       "torus small-time law",
                                       "Ornstein-Uhlenbeck suite",
                                       "truncation machinery",
                                       "determinism"};
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("criterion id out of range");
  return titles[id];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  CriterionResult result;
  result.id = id;
  result.title = criterion_title(id);
  std::filesystem::create_directories(options.out_dir);
  const Ctx ctx{id, options.out_dir, options.seed, &result};
  try {
    switch (id) {
      case 1: route_equivalence(ctx); break;
      case 2: stable_density_oracle(ctx); break;
      case 3: rate_closed_forms(ctx); break;
      case 4: square_transfer(ctx); break;
      case 5: integral_inequality(ctx); break;
      case 6: jensen_exactness(ctx); break;
      case 7: ultracontractivity(ctx); break;
      case 8: condition_d(ctx); break;
      case 9: torus_trichotomy(ctx); break;
      case 10: torus_small_time(ctx); break;
      case 11: ou_suite(ctx); break;
      case 12: truncation_machinery(ctx); break;
      case 13: determinism_standalone(options, result); break;
    }
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  auto wanted = [&](int id) {
    return options.only.empty() ||
           std::find(options.only.begin(), options.only.end(), id) != options.only.end();
  };
  std::vector<CriterionResult> results;
  std::filesystem::create_directories(options.out_dir);
  bool full = true;
  for (int id = 1; id < kCriterionCount; ++id) full = full && wanted(id);

  if (full) {
    results = run_range(options, 1, kCriterionCount - 1);
  } else {
    std::vector<int> ids;
    for (int id = 1; id < kCriterionCount; ++id)
      if (wanted(id)) ids.push_back(id);
    results.resize(ids.size());
    parallel_for(ids.size(), options.jobs,
                 [&](std::size_t i) { results[i] = run_criterion(ids[i], options); });
  }

  if (wanted(kCriterionCount)) {
    CriterionResult det;
    det.id = kCriterionCount;
    det.title = criterion_title(kCriterionCount);
    try {
      if (full) {
        AcceptanceOptions rerun = options;
        rerun.out_dir = options.out_dir / "rerun";
        compare_runs(results, options.out_dir, rerun.out_dir, rerun, det);
      } else {
        determinism_standalone(options, det);
      }
    } catch (const std::exception& e) {
      det.passed = false;
      det.detail = std::string("error: ") + e.what();
    }
    results.push_back(std::move(det));
  }

  CsvTable summary({"criterion", "title", "passed", "detail"});
  for (const auto& r : results)
    summary.add(Row{std::int64_t{r.id}, r.title, std::string(r.passed ? "true" : "false"),
                    r.detail});
  summary.write(options.out_dir / "acceptance.csv");
  return results;
}

std::string summary_line(const CriterionResult& result) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d  ", result.passed ? "PASS" : "FAIL", result.id);
  return head + result.title + "  " + result.detail;
}

}  // namespace fracnash::cli
