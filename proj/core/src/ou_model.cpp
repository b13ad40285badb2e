// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/ou_model.hpp"

#include "fracnash/errors.hpp"
#include "fracnash/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace fracnash::ou {

namespace {

constexpr int kMaxNodes = 400;

// Normalized Hermite series at x.
double series_at(const Vector& coeffs, double x) {
  const Eigen::Index n = coeffs.size();
  double prev = 0.0, cur = 1.0, sum = coeffs[0];
  for (Eigen::Index k = 1; k < n; ++k) {
    const double next = (x * cur - std::sqrt(static_cast<double>(k - 1)) * prev) /
                        std::sqrt(static_cast<double>(k));
    prev = cur;
    cur = next;
    sum += coeffs[k] * cur;
  }
  return sum;
}

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

// int g(f(x)) dgamma_1 for a one-dimensional Hermite series, split at the
// sign changes of f so that kinks of |f| sit on panel ends.
double integrate_1d(const Vector& coeffs, double power_hint,
                    const std::function<double(double)>& g) {
  const double n = static_cast<double>(coeffs.size());
  const double L = std::sqrt(2.0 * std::max(power_hint, 2.0) * n) + 12.0;
  auto f = [&](double x) { return series_at(coeffs, x); };
  const int samples = 20 * static_cast<int>(n) + 200;
  std::vector<double> cuts{-L};
  double x_prev = -L, f_prev = f(-L);
  for (int i = 1; i <= samples; ++i) {
    const double x = -L + 2.0 * L * i / samples;
    const double fx = f(x);
    if ((f_prev < 0.0) != (fx < 0.0) && f_prev != 0.0 && fx != 0.0)
      cuts.push_back(numerics::bisect(f, x_prev, x, 1e-15));
    x_prev = x;
    f_prev = fx;
  }
  cuts.push_back(L);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += numerics::integrate([&](double x) { return g(f(x)) * gaussian_pdf(x); }, cuts[i],
                                 cuts[i + 1], 1e-12, 12)
                 .value;
  }
  return total;
}

// Same integral by a product rule with 8n nodes per axis.
double integrate_tensor(const HermiteModel& model, const Vector& coeffs,
                        const std::function<double(double)>& g) {
  const HermiteModel fine(model.n(), model.dim(), std::max(8 * model.n(), model.q()));
  const Vector values = fine.values_at_nodes(coeffs);
  const Vector weights = fine.node_weights();
  double total = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) total += weights[i] * g(values[i]);
  return total;
}

double integrate_any(const HermiteModel& model, const Vector& coeffs, double power_hint,
                     const std::function<double(double)>& g) {
  return model.dim() == 1 ? integrate_1d(coeffs, power_hint, g)
                          : integrate_tensor(model, coeffs, g);
}

void require_size(const HermiteModel& model, const Vector& coeffs, const char* who) {
  if (coeffs.size() != model.size())
    throw InvalidArgument(std::string(who) + ": coefficient vector has the wrong length");
}

}  // namespace

void hermite_values(int n, double x, std::span<double> out) {
  if (n < 1 || out.size() < static_cast<std::size_t>(n))
    throw InvalidArgument("hermite_values: bad size");
  out[0] = 1.0;
  if (n > 1) out[1] = x;
  for (int k = 1; k + 1 < n; ++k)
    out[k + 1] = (x * out[k] - std::sqrt(static_cast<double>(k)) * out[k - 1]) /
                 std::sqrt(static_cast<double>(k + 1));
}

GaussHermite gauss_hermite(int q) {
  if (q < 1 || q > kMaxNodes) throw InvalidArgument("gauss_hermite: q must lie in [1, 400]");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(q, q);
  for (int k = 1; k < q; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussHermite rule;
  rule.nodes.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + q);
  std::vector<double> h(q + 1);
  for (double& x : rule.nodes) {
    // Newton polish on h_q, whose derivative is sqrt(q) h_{q-1}.
    for (int it = 0; it < 3; ++it) {
      hermite_values(q + 1, x, h);
      x -= h[q] / (std::sqrt(static_cast<double>(q)) * h[q - 1]);
    }
  }
  for (int i = 0; i < q / 2; ++i) {
    const double m = 0.5 * (rule.nodes[q - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -m;
    rule.nodes[q - 1 - i] = m;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  double total = 0.0;
  for (double x : rule.nodes) {
    hermite_values(q, x, h);
    double s = 0.0;
    for (int k = 0; k < q; ++k) s += h[k] * h[k];
    rule.weights.push_back(1.0 / s);
    total += 1.0 / s;
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

HermiteModel::HermiteModel(int n, int dim, int q) : n_(n), dim_(dim), q_(q == 0 ? 2 * n : q) {
  if (n < 1) throw InvalidArgument("HermiteModel: n must be positive");
  if (dim < 1 || dim > 3) throw InvalidArgument("HermiteModel: dimension must be 1, 2 or 3");
  if (dim > 1 && n > 8) throw InvalidArgument("HermiteModel: tensor models allow n <= 8");
  if (q_ < 1) throw InvalidArgument("HermiteModel: q must be positive");
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= n;
  rule_ = gauss_hermite(q_);
  eigenvalues_.resize(size_);
  for (Eigen::Index i = 0; i < size_; ++i) {
    Eigen::Index rest = i, degree = 0;
    for (int a = 0; a < dim; ++a) {
      degree += rest % n;
      rest /= n;
    }
    eigenvalues_[i] = static_cast<double>(degree);
  }
}

spectral::SpectralOperator HermiteModel::op() const {
  return spectral::SpectralOperator(spectral::MeasureSpace::uniform(size_), eigenvalues_,
                                    spectral::Matrix::Identity(size_, size_));
}

double HermiteModel::evaluate(const Vector& coeffs, std::span<const double> x) const {
  require_size(*this, coeffs, "evaluate");
  if (x.size() != static_cast<std::size_t>(dim_))
    throw InvalidArgument("evaluate: point has the wrong dimension");
  if (dim_ == 1) return series_at(coeffs, x[0]);
  std::vector<std::vector<double>> h(dim_, std::vector<double>(n_));
  for (int a = 0; a < dim_; ++a) hermite_values(n_, x[a], h[a]);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < size_; ++i) {
    Eigen::Index rest = i;
    double prod = 1.0;
    for (int a = dim_ - 1; a >= 0; --a) {
      prod *= h[a][rest % n_];
      rest /= n_;
    }
    sum += coeffs[i] * prod;
  }
  return sum;
}

Vector HermiteModel::values_at_nodes(const Vector& coeffs) const {
  require_size(*this, coeffs, "values_at_nodes");
  Eigen::MatrixXd table(q_, n_);
  std::vector<double> h(n_);
  for (int i = 0; i < q_; ++i) {
    hermite_values(n_, rule_.nodes[i], h);
    for (int k = 0; k < n_; ++k) table(i, k) = h[k];
  }
  if (dim_ == 1) return table * coeffs;
  Eigen::Index points = 1;
  for (int a = 0; a < dim_; ++a) points *= q_;
  Vector out(points);
  for (Eigen::Index p = 0; p < points; ++p) {
    std::vector<int> node(dim_);
    Eigen::Index rest = p;
    for (int a = dim_ - 1; a >= 0; --a) {
      node[a] = static_cast<int>(rest % q_);
      rest /= q_;
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < size_; ++i) {
      Eigen::Index r = i;
      double prod = 1.0;
      for (int a = dim_ - 1; a >= 0; --a) {
        prod *= table(node[a], r % n_);
        r /= n_;
      }
      sum += coeffs[i] * prod;
    }
    out[p] = sum;
  }
  return out;
}

Vector HermiteModel::node_weights() const {
  Eigen::Index points = 1;
  for (int a = 0; a < dim_; ++a) points *= q_;
  Vector w(points);
  for (Eigen::Index p = 0; p < points; ++p) {
    Eigen::Index rest = p;
    double prod = 1.0;
    for (int a = 0; a < dim_; ++a) {
      prod *= rule_.weights[rest % q_];
      rest /= q_;
    }
    w[p] = prod;
  }
  return w;
}

Vector HermiteModel::semigroup(const Vector& coeffs, double alpha, double t) const {
  require_size(*this, coeffs, "semigroup");
  if (!(alpha > 0.0) || !(t >= 0.0)) throw InvalidArgument("semigroup: need alpha > 0, t >= 0");
  Vector out(size_);
  for (Eigen::Index i = 0; i < size_; ++i)
    out[i] = coeffs[i] * std::exp(-t * std::pow(eigenvalues_[i], alpha));
  return out;
}

double HermiteModel::energy(const Vector& coeffs, double alpha) const {
  require_size(*this, coeffs, "energy");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < size_; ++i)
    if (eigenvalues_[i] > 0.0) sum += std::pow(eigenvalues_[i], alpha) * coeffs[i] * coeffs[i];
  return sum;
}

double mixed_norm(const HermiteModel& model, const Vector& coeffs, double p) {
  require_size(model, coeffs, "mixed_norm");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("mixed_norm: p must be >= 1");
  const bool even = p == std::floor(p) && static_cast<long>(p) % 2 == 0;
  if (even) {
    // f^p has degree p (n-1) per axis; the rule is exact to 2q - 1.
    if (p * (model.n() - 1) > 2.0 * model.q() - 1.0)
      throw InvalidArgument("mixed_norm: q too small for the requested degree and p");
    const Vector values = model.values_at_nodes(coeffs);
    const Vector weights = model.node_weights();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) sum += weights[i] * std::pow(values[i], p);
    return std::pow(sum, 1.0 / p);
  }
  const double sum = integrate_any(model, coeffs, p, [p](double v) { return std::pow(std::abs(v), p); });
  return std::pow(sum, 1.0 / p);
}

double entropy(const HermiteModel& model, const Vector& coeffs) {
  require_size(model, coeffs, "entropy");
  const double norm = coeffs.norm();
  if (!(norm > 0.0)) throw InvalidArgument("entropy: zero function");
  return integrate_any(model, coeffs, 2.0, [norm](double v) {
    const double a = std::abs(v);
    return a > 0.0 ? a * a * std::log(a / norm) : 0.0;
  });
}

double parseval_defect(const HermiteModel& model, const Vector& coeffs) {
  return std::abs(mixed_norm(model, coeffs, 2.0) - coeffs.norm());
}

LsiReport ou_lsi_check(const HermiteModel& model, const ensembles::Ensemble& ensemble) {
  LsiReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const Vector& c = ensemble.samples[i];
    if (!(c.norm() > 0.0)) continue;
    const double ent = entropy(model, c);
    const double energy = model.energy(c);
    ++report.count;
    if (energy - ent < report.min_slack) {
      report.min_slack = energy - ent;
      report.entropy = ent;
      report.energy = energy;
      report.index = i;
    }
  }
  if (report.count == 0) throw InvalidArgument("ou_lsi_check: empty ensemble");
  return report;
}

nash::NashCertificate ou_log_nash_check(const HermiteModel& model, double alpha,
                                        const ensembles::Ensemble& ensemble) {
  if (!(alpha > 0.0)) throw InvalidArgument("ou_log_nash_check: alpha must be positive");
  nash::NashCertificate cert;
  cert.alpha = alpha;
  cert.ensemble = ensemble.descriptor;
  cert.rate = "log_+";
  cert.ratio_infimum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const Vector& c = ensemble.samples[i];
    nash::SampleRecord rec;
    rec.family = ensemble.families[i];
    rec.l1 = mixed_norm(model, c, 1.0);
    if (!(rec.l1 > 0.0)) {
      ++cert.degenerate;
      cert.samples.push_back(rec);
      continue;
    }
    const Vector g = c / rec.l1;
    rec.l2sq = g.squaredNorm();
    rec.form = model.energy(g, alpha);
    const double log_norm = 0.5 * std::log(rec.l2sq);
    // ||g||_2 >= ||g||_1 = 1; equality up to rounding leaves no log term.
    if (log_norm > 1e-12) {
      rec.denominator = rec.l2sq * std::pow(log_norm, alpha);
      rec.ratio = rec.form / rec.denominator;
      rec.scored = true;
      ++cert.scored;
      if (rec.ratio < cert.ratio_infimum) {
        cert.ratio_infimum = rec.ratio;
        cert.witness = g;
      }
    } else {
      ++cert.degenerate;
    }
    cert.samples.push_back(rec);
  }
  if (cert.scored == 0) throw NumericalError("ou_log_nash_check: no sample with ||g||_2 > 1");
  return cert;
}

Vector exponential_candidate(int n, double theta, double* projection_error) {
  if (n < 1) throw InvalidArgument("exponential_candidate: n must be positive");
  if (!std::isfinite(theta)) throw InvalidArgument("exponential_candidate: theta must be finite");
  Vector c = Vector::Zero(n);
  if (theta == 0.0) {
    c[0] = 1.0;
    if (projection_error) *projection_error = 0.0;
    return c;
  }
  const double lt = std::log(std::abs(theta));
  Vector logs(n);
  for (int k = 0; k < n; ++k) logs[k] = k * lt - 0.5 * std::lgamma(k + 1.0);
  const double top = logs.maxCoeff();
  for (int k = 0; k < n; ++k) {
    c[k] = std::exp(logs[k] - top);
    if (theta < 0.0 && k % 2 == 1) c[k] = -c[k];
  }
  c /= c.norm();
  // ||e^{theta x}||^2 = e^{theta^2} in these coefficients; the kept part is
  // the Poisson tail Q(n, theta^2).
  if (projection_error) *projection_error = std::sqrt(boost::math::gamma_p(n, theta * theta));
  return c;
}

std::vector<GrowthRow> hypercontractivity_probe(std::span<const int> n_list, double alpha,
                                                double t, const ProbeOptions& options) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidArgument("hypercontractivity_probe: alpha must lie in (0, 1]");
  if (!(t > 0.0)) throw InvalidArgument("hypercontractivity_probe: t must be positive");
  std::vector<GrowthRow> rows;
  for (int n : n_list) {
    const HermiteModel model(n);
    auto ratio = [&](const Vector& c) {
      return mixed_norm(model, model.semigroup(c, alpha, t), 4.0) / c.norm();
    };
    GrowthRow row;
    row.n = n;
    row.witness = "exp";
    row.ratio = ratio(exponential_candidate(n, 0.0));
    std::vector<double> thetas = options.thetas;
    if (thetas.empty()) {
      const double hi = 2.0 * std::sqrt(static_cast<double>(n)) + 2.0;
      constexpr int kThetas = 240;
      for (int j = 0; j < kThetas; ++j)
        thetas.push_back(0.05 * std::pow(hi / 0.05, j / (kThetas - 1.0)));
    }
    for (double theta : thetas) {
      double err = 0.0;
      const double r = ratio(exponential_candidate(n, theta, &err));
      if (r > row.ratio) {
        row.ratio = r;
        row.theta = theta;
        row.projection_error = err;
      }
    }
    if (options.random_samples > 0) {
      ensembles::EnsembleSpec spec;
      spec.per_family = std::max<std::size_t>(1, options.random_samples / spec.families.size());
      spec.seed = options.seed + static_cast<std::uint64_t>(n);
      const ensembles::Ensemble ens = ensembles::generate(model.op(), spec);
      for (const Vector& c : ens.samples) {
        if (!(c.norm() > 0.0)) continue;
        const double r = ratio(c);
        if (r > row.ratio) {
          row.ratio = r;
          row.witness = "random";
          row.theta = 0.0;
          row.projection_error = 0.0;
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fracnash::ou
