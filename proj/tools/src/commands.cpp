// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/cli/commands.hpp"

#include "fracnash/cli/acceptance.hpp"
#include "fracnash/cli/parallel.hpp"
#include "fracnash/cli/report.hpp"
#include "fracnash/ensembles.hpp"
#include "fracnash/log_sobolev.hpp"
#include "fracnash/nash_toolkit.hpp"
#include "fracnash/operator_gallery.hpp"
#include "fracnash/ou_model.hpp"
#include "fracnash/subordination.hpp"
#include "fracnash/torus_product.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace fracnash::cli {

namespace {

using spectral::Matrix;
using spectral::Vector;
using Row = std::vector<CsvTable::Cell>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

class Session {
 public:
  Session(const ExperimentConfig& config, const RunOptions& options)
      : config_(config), options_(options) {}

  const ExperimentConfig& config() const { return config_; }
  const RunOptions& options() const { return options_; }
  RunOutcome& outcome() { return outcome_; }

  std::filesystem::path path(const std::string& name) const { return options_.out_dir / name; }

  void emit(const std::string& name, const CsvTable& table) {
    table.write(path(name));
    outcome_.files.push_back(name);
  }
  void emit_text(const std::string& name, const std::string& text) {
    std::ofstream out(path(name), std::ios::binary | std::ios::trunc);
    out << text;
    outcome_.files.push_back(name);
  }
  // The first failure wins; later ones are still recorded in the CSVs.
  void fail(const std::string& message, const std::string& evidence) {
    if (outcome_.exit_code != 0) return;
    outcome_.exit_code = 1;
    outcome_.failure = message;
    outcome_.certificate = path(evidence);
  }

 private:
  const ExperimentConfig& config_;
  const RunOptions& options_;
  RunOutcome outcome_;
};

ensembles::Ensemble ensemble_from(const ExperimentConfig& cfg, const spectral::SpectralOperator& op,
                                  std::uint64_t salt = 0) {
  ensembles::EnsembleSpec spec;
  spec.seed = cfg.seed() + salt;
  spec.per_family = static_cast<std::size_t>(cfg.integer_or("run.per_family", 200));
  if (cfg.has("run.families")) {
    std::string raw = cfg.text("run.families");
    for (auto& c : raw)
      if (c == ',') c = ' ';
    std::istringstream in(raw);
    spec.families.clear();
    std::string name;
    while (in >> name) {
      try {
        spec.families.push_back(ensembles::parse_family(name));
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("[run] families: ") + e.what());
      }
    }
  }
  spec.smoothing_times = cfg.numbers_or("run.smoothing_times", spec.smoothing_times);
  spec.spike_floor = cfg.number_or("run.spike_floor", spec.spike_floor);
  return ensembles::generate(op, spec);
}

spectral::ScalarFunction named_function(const std::string& name) {
  if (name == "square") return spectral::ScalarFunction::power(2.0);
  if (name == "cube") return spectral::ScalarFunction::power(3.0);
  if (name == "exp") return {[](double x) { return std::exp(x); }, true, true, "exp"};
  if (name == "sqrt") return spectral::ScalarFunction::power(0.5);
  if (name == "log1p") return {[](double x) { return std::log1p(x); }, true, false, "log1p"};
  if (name == "frac") return {[](double x) { return x / (1.0 + x); }, true, false, "x/(1+x)"};
  if (name.rfind("power:", 0) == 0) {
    try {
      return spectral::ScalarFunction::power(std::stod(name.substr(6)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw ConfigError("unknown function '" + name + "'");
}

std::vector<std::string> words_or(const ExperimentConfig& cfg, const std::string& key,
                                  std::vector<std::string> fallback) {
  if (!cfg.has(key)) return fallback;
  std::string raw = cfg.text(key);
  for (auto& c : raw)
    if (c == ',') c = ' ';
  std::istringstream in(raw);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// ------------------------------------------------------------------ commands

void certify_nash(Session& s) {
  const auto& cfg = s.config();
  const auto op = gallery::build(cfg.generator());
  const auto b = cfg.rate(op);
  const auto ensemble = ensemble_from(cfg, op);
  const double floor = cfg.number_or("run.min_infimum", 1.0);
  CsvTable table({"alpha", "rate", "ensemble", "samples", "scored", "degenerate", "infimum",
                  "required", "certificate"});
  for (double alpha : cfg.numbers_or("run.alpha", {1.0})) {
    const auto cert = nash::nash_ratio(op, b, alpha, ensemble);
    const std::string name = "certificate_alpha_" + format_number(alpha) + ".txt";
    s.emit_text(name, cert.to_text());
    table.add(Row{alpha, cert.rate, cert.ensemble, as_int(ensemble.size()), as_int(cert.scored),
                  as_int(cert.degenerate), cert.ratio_infimum, floor, name});
    if (cert.scored > 0 && cert.ratio_infimum < floor * (1.0 - 1e-12))
      s.fail("Nash ratio infimum " + format_number(cert.ratio_infimum) + " below " +
                 format_number(floor) + " at alpha " + format_number(alpha),
             name);
  }
  s.emit("nash_certificate.csv", table);
}

void rate_from_profile(Session& s) {
  const auto& cfg = s.config();
  const auto profile = cfg.profile();
  const auto log_x = cfg.numbers_or("run.log_x", {0.5, 1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 100});
  CsvTable table({"log_x", "B"});
  double prev = -std::numeric_limits<double>::infinity();
  for (double l : log_x) {
    const double v = nash::rate_from_profile_log(profile, l);
    table.add(Row{l, v});
    if (v < prev * (1.0 + 1e-12) - 1e-300 && v < prev)
      s.fail("B decreases at log x = " + format_number(l), "rate_from_profile.csv");
    prev = v;
  }
  s.emit("rate_from_profile.csv", table);

  std::vector<double> grid;
  const double lo = cfg.number_or("run.d_lo", 1e-3), hi = cfg.number_or("run.d_hi", 1e3);
  const int count = static_cast<int>(cfg.integer_or("run.d_points", 1000));
  for (int i = 0; i < count; ++i)
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / std::max(count - 1, 1)));
  CsvTable d({"profile", "t_lo", "t_hi", "points", "c"});
  d.add(Row{profile.name(), lo, hi, std::int64_t{count}, nash::check_condition_D(profile, grid)});
  s.emit("condition_d.csv", d);
}

void subordinate(Session& s) {
  const auto& cfg = s.config();
  const auto op = gallery::build(cfg.generator());
  const double tol = cfg.number_or("run.tolerance", 1e-6);
  const auto alphas = cfg.numbers_or("run.alpha", {0.3, 0.5, 0.7, 0.9});
  const auto ts = cfg.numbers_or("run.t", {0.1, 1.0, 10.0});
  struct Cell {
    double alpha, t, dev, pdev, err;
    std::int64_t nodes;
  };
  std::vector<Cell> cells;
  for (double a : alphas)
    for (double t : ts) cells.push_back({a, t, 0, kNaN, 0, 0});
  parallel_for(cells.size(), s.options().jobs, [&](std::size_t i) {
    auto& c = cells[i];
    const auto quad = subordination::subordinate_semigroup(op, c.alpha, c.t);
    const Matrix ref = subordination::spectral_fractional_semigroup(op, c.alpha, c.t);
    c.dev = (quad.matrix - ref).cwiseAbs().maxCoeff();
    c.err = quad.error_estimate;
    c.nodes = quad.nodes;
    if (c.alpha == 0.5)
      c.pdev = (subordination::poisson_semigroup(op, c.t).matrix - ref).cwiseAbs().maxCoeff();
  });
  CsvTable table({"alpha", "t", "route_deviation", "poisson_deviation", "error_estimate", "nodes"});
  for (const auto& c : cells) {
    table.add(Row{c.alpha, c.t, c.dev, c.pdev, c.err, c.nodes});
    if (c.dev > tol)
      s.fail("route deviation " + format_number(c.dev) + " above " + format_number(tol) +
                 " at alpha " + format_number(c.alpha) + ", t " + format_number(c.t),
             "subordinate.csv");
  }
  s.emit("subordinate.csv", table);
}

void ultra_profile(Session& s) {
  const auto& cfg = s.config();
  const auto op = gallery::build(gallery::GeneratorSpec::diagonal({1.0}));
  const auto b = cfg.has("rate.kind") ? cfg.rate(op) : nash::RateFunction::from_profile(cfg.profile());
  CsvTable table({"t", "log_l1_to_l2_sq", "log_l1_to_inf"});
  for (double t : cfg.numbers_or("run.t", {0.001, 0.01, 0.1, 1.0, 10.0})) {
    const auto u = nash::ultracontractivity_from_nash(b, t);
    table.add(Row{t, u.log_l1_to_l2_sq, u.log_l1_to_inf});
  }
  s.emit("ultra_profile.csv", table);
}

void half_power_check(Session& s) {
  const auto& cfg = s.config();
  const auto op = gallery::build(cfg.generator());
  const auto b = cfg.has("rate.kind") ? cfg.rate(op) : nash::spectral_gap_rate(op);
  const double horizon = cfg.number_or("run.horizon", 50.0);
  const auto count = cfg.integer_or("run.samples", 50);
  const double tol = cfg.number_or("run.tolerance", 1e-8);
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(1e-4 * std::pow(horizon / 1e-4, i / 199.0));
  std::mt19937_64 rng(cfg.seed());
  std::normal_distribution<double> normal;
  CsvTable table({"sample", "lhs", "rhs", "rhs_minus_lhs", "base_holds", "worst_base_slack"});
  for (long j = 0; j < count; ++j) {
    Vector g(op.size());
    for (auto& v : g) v = normal(rng);
    g /= op.space().norm1(g);
    const auto r = nash::halfpower_integral_check(op, b, g, horizon, grid);
    table.add(Row{std::int64_t{j}, r.lhs, r.rhs, r.rhs - r.lhs,
                  std::string(r.base_holds ? "true" : "false"), r.worst_base_slack});
    if (r.base_holds && r.rhs - r.lhs < -tol)
      s.fail("integral inequality violated for sample " + std::to_string(j), "half_power.csv");
  }
  s.emit("half_power.csv", table);
}

void jensen_check(Session& s) {
  const auto& cfg = s.config();
  const auto op = gallery::build(cfg.generator());
  const auto samples = ensembles::unit_sphere(op.space(), cfg.integer_or("run.samples", 1000),
                                              cfg.seed());
  const double lmin = op.eigenvalues().minCoeff();
  const spectral::ScalarFunction lambda{[lmin](double) { return lmin; }, true, true, "lambda_min"};
  const double tol = cfg.number_or("run.tolerance", 1e-12);
  CsvTable table({"phi", "jensen_slack", "transfer_slack", "applicable", "samples"});
  for (const auto& name : words_or(cfg, "run.phi", {"square", "cube", "exp"})) {
    const auto phi = named_function(name);
    const auto r = nash::jensen_transfer_check(op, lambda, phi, samples);
    table.add(Row{name, r.jensen_slack, r.transfer_slack, as_int(r.applicable), as_int(r.total)});
    if (r.jensen_slack < -tol)
      s.fail("Jensen slack " + format_number(r.jensen_slack) + " for " + name, "jensen.csv");
  }
  s.emit("jensen.csv", table);
}

void logsob_check(Session& s) {
  const auto& cfg = s.config();
  const auto spec = cfg.generator();
  CsvTable table({"alpha", "constant", "calibrated", "entropy", "energy", "l2sq", "slack"});
  if (spec.kind == gallery::GeneratorKind::ou) {
    const ou::HermiteModel model(spec.size);
    const auto ensemble = ensemble_from(cfg, model.op());
    const auto r = ou::ou_lsi_check(model, ensemble);
    CsvTable ou_table({"n", "samples", "min_slack", "entropy", "energy"});
    ou_table.add(Row{std::int64_t{spec.size}, as_int(r.count), r.min_slack, r.entropy, r.energy});
    s.emit("ou_lsi.csv", ou_table);
    if (r.min_slack < -cfg.number_or("run.tolerance", 1e-9))
      s.fail("Gaussian log-Sobolev slack " + format_number(r.min_slack), "ou_lsi.csv");
    return;
  }
  const auto matrix = gallery::generator_matrix(spec);
  const auto op = spectral::eigendecompose(matrix, spectral::MeasureSpace::probability(matrix.rows()));
  const auto ensemble = ensemble_from(cfg, op);
  for (double alpha : cfg.numbers_or("run.alpha", {1.0})) {
    const double calibrated = logsob::calibrate_logsob_constant(op, alpha, ensemble);
    const bool given = cfg.has("run.c");
    const double c = given ? cfg.number("run.c") : calibrated;
    const auto r = logsob::logsob_check(op, alpha, c, ensemble);
    table.add(Row{alpha, c, calibrated, r.entropy, r.energy, r.l2sq, r.slack});
    if (given && r.slack < -cfg.number_or("run.tolerance", 1e-12))
      s.fail("log-Sobolev constant " + format_number(c) + " too small at alpha " +
                 format_number(alpha),
             "logsob.csv");
  }
  s.emit("logsob.csv", table);
}

void torus_sweep(Session& s) {
  const auto& cfg = s.config();
  const double gamma = cfg.number_or("run.gamma", 1.0);
  const auto k = static_cast<std::uint64_t>(cfg.integer_or("run.K", 0));
  const torus::TorusSpectrum spec{gamma, k};
  const double alpha_c = gamma / (gamma + 1.0);
  const auto alphas = cfg.numbers_or("run.alpha", {0.3, 0.5, 0.75});
  const auto ts = cfg.numbers_or("run.t", {1e-3, 1e-2, 0.1, 1.0, 10.0});
  const auto beta_grid = cfg.numbers_or("run.beta_grid", {0.005, 0.01, 0.02, 0.05});
  const double t_lo = cfg.number_or("run.t_lo", 0.1), t_hi = cfg.number_or("run.t_hi", 100.0);
  auto critical = [alpha_c](double a) { return std::abs(a - alpha_c) <= 1e-12; };

  struct Cell {
    double alpha, t;
    torus::SubordinatedResult r;
  };
  std::vector<Cell> cells;
  for (double a : alphas)
    for (double t : ts) cells.push_back({a, t, {}});
  struct Summary {
    double t_hat = kNaN, beta = kNaN;
  };
  std::vector<Summary> per_alpha(alphas.size());

  // Cells first, then one task per alpha for t_hat or beta.
  parallel_for(cells.size() + alphas.size(), s.options().jobs, [&](std::size_t i) {
    if (i < cells.size()) {
      cells[i].r = torus::subordinated_log_density(spec, cells[i].alpha, cells[i].t);
      return;
    }
    const std::size_t j = i - cells.size();
    const double a = alphas[j];
    if (critical(a))
      per_alpha[j].t_hat = torus::critical_threshold(spec, a, t_lo, t_hi);
    else if (a > alpha_c)
      per_alpha[j].beta = torus::decay_exponent_fit(spec, a, beta_grid).beta;
  });

  CsvTable sweep({"gamma", "alpha", "t", "K", "status", "value", "beta_hat"});
  CsvTable regimes({"gamma", "alpha", "status", "t_hat", "beta_hat", "beta_expected"});
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const double a = alphas[j];
    const bool crit = critical(a);
    const torus::Status want = a < alpha_c ? torus::Status::divergent : torus::Status::finite;
    bool consistent = true;
    for (const auto& c : cells) {
      if (c.alpha != a) continue;
      sweep.add(Row{gamma, a, c.t, as_int(c.r.K), std::string(to_string(c.r.status)),
                    c.r.log_value, per_alpha[j].beta});
      if (crit) continue;
      if (c.r.status == torus::Status::inconclusive) {
        if (s.options().strict)
          s.fail("inconclusive torus cell at alpha " + format_number(a) + ", t " +
                     format_number(c.t),
                 "torus_sweep.csv");
      } else if (c.r.status != want) {
        consistent = false;
        s.fail("torus cell at alpha " + format_number(a) + ", t " + format_number(c.t) + " is " +
                   std::string(to_string(c.r.status)),
               "torus_sweep.csv");
      }
    }
    std::string status;
    if (crit) {
      status = "threshold";
      sweep.add(Row{gamma, a, per_alpha[j].t_hat, std::int64_t{0}, status, per_alpha[j].t_hat,
                    kNaN});
    } else {
      status = consistent ? std::string(to_string(want)) : "mixed";
    }
    const double expected = a > alpha_c && !crit ? alpha_c / (a - alpha_c) : kNaN;
    regimes.add(Row{gamma, a, status, per_alpha[j].t_hat, per_alpha[j].beta, expected});
  }
  s.emit("torus_sweep.csv", sweep);
  s.emit("torus_regimes.csv", regimes);
}

void ou_suite_command(Session& s) {
  const auto& cfg = s.config();
  const int n = static_cast<int>(cfg.integer_or("run.n", 16));
  const ou::HermiteModel model(n);
  const auto ensemble = ensemble_from(cfg, model.op());
  CsvTable table({"check", "n", "value"});
  double parseval = 0.0;
  for (const auto& c : ensemble.samples) parseval = std::max(parseval, ou::parseval_defect(model, c));
  table.add(Row{std::string("parseval_defect"), std::int64_t{n}, parseval});
  const auto lsi = ou::ou_lsi_check(model, ensemble);
  table.add(Row{std::string("lsi_min_slack"), std::int64_t{n}, lsi.min_slack});
  for (double alpha : cfg.numbers_or("run.log_nash_alpha", {1.0})) {
    const auto cert = ou::ou_log_nash_check(model, alpha, ensemble);
    table.add(Row{"log_nash_infimum_alpha_" + format_number(alpha), std::int64_t{n},
                  cert.ratio_infimum});
  }
  s.emit("ou_suite.csv", table);
  if (parseval > 1e-9) s.fail("Parseval defect " + format_number(parseval), "ou_suite.csv");
  if (lsi.min_slack < -1e-9)
    s.fail("Gaussian log-Sobolev slack " + format_number(lsi.min_slack), "ou_suite.csv");

  std::vector<int> ns;
  for (double v : cfg.numbers_or("run.probe_n", {16, 32, 64})) ns.push_back(static_cast<int>(v));
  ou::ProbeOptions probe;
  probe.seed = cfg.seed();
  probe.random_samples = static_cast<std::size_t>(cfg.integer_or("run.random_samples", 200));
  CsvTable growth({"alpha", "t", "n", "ratio", "witness", "theta", "projection_error"});
  for (double alpha : cfg.numbers_or("run.probe_alpha", {0.5, 1.0})) {
    const double t = alpha == 1.0 ? 1.01 * std::log(std::sqrt(3.0)) : cfg.number_or("run.probe_t", 0.1);
    for (const auto& row : ou::hypercontractivity_probe(ns, alpha, t, probe)) {
      growth.add(Row{alpha, t, std::int64_t{row.n}, row.ratio, row.witness, row.theta,
                     row.projection_error});
      if (alpha == 1.0 && row.ratio > 1.0 + 1e-6)
        s.fail("L2->L4 norm above 1 past the Nelson time", "hypercontractivity.csv");
    }
  }
  s.emit("hypercontractivity.csv", growth);
}

void explore_bernstein(Session& s) {
  const auto& cfg = s.config();
  const auto op = gallery::build(cfg.generator());
  const auto b = cfg.rate(op);
  const auto ensemble = ensemble_from(cfg, op);
  CsvTable table({"g", "rate", "infimum", "median", "maximum", "scored"});
  for (const auto& name : words_or(cfg, "run.g", {"sqrt", "log1p", "frac"})) {
    const auto st = nash::bernstein_explore(op, named_function(name), b, ensemble);
    table.add(Row{name, b.name(), st.infimum, st.median, st.maximum, as_int(st.scored)});
  }
  s.emit("bernstein.csv", table);
}

void selftest(Session& s) {
  AcceptanceOptions opts;
  opts.out_dir = s.options().out_dir / "selftest";
  opts.seed = s.config().seed();
  opts.jobs = s.options().jobs;
  for (double id : s.config().numbers_or("run.only", {})) opts.only.push_back(static_cast<int>(id));
  for (const auto& r : run_acceptance(opts)) {
    std::cout << summary_line(r) << std::endl;
    if (!r.passed)
      s.fail("acceptance criterion " + std::to_string(r.id) + " failed", "selftest/acceptance.csv");
  }
  s.outcome().files.push_back("selftest/acceptance.csv");
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Session session(config, options);
  std::uint64_t seed = 0;
  try {
    seed = config.seed();
    std::filesystem::create_directories(options.out_dir);
    static const std::map<std::string, void (*)(Session&)> table = {
        {"certify-nash", certify_nash},
        {"rate-from-profile", rate_from_profile},
        {"subordinate", subordinate},
        {"ultra-profile", ultra_profile},
        {"half-power-check", half_power_check},
        {"jensen-check", jensen_check},
        {"logsob-check", logsob_check},
        {"torus-sweep", torus_sweep},
        {"ou-suite", ou_suite_command},
        {"explore-bernstein", explore_bernstein},
        {"selftest", selftest}};
    table.at(config.command())(session);
  } catch (const ConfigError& e) {
    RunOutcome bad;
    bad.exit_code = 2;
    bad.failure = e.what();
    return bad;
  } catch (const std::exception& e) {
    auto& o = session.outcome();
    o.exit_code = 1;
    o.failure = e.what();
    o.certificate.clear();
  }

  RunOutcome out = session.outcome();
  Manifest manifest;
  manifest.command = config.command();
  manifest.seed = seed;
  manifest.config = config.entries();
  manifest.files = out.files;
  manifest.status = out.exit_code == 0 ? "pass" : "fail";
  manifest.failure = out.failure;
  manifest.jobs = options.jobs;
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.write(options.out_dir / "manifest.txt");
  return out;
}

}  // namespace fracnash::cli
