// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/spectral_core.hpp"

#include "fracnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracnash::spectral {

MeasureSpace::MeasureSpace(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() < 1) throw InvalidArgument("MeasureSpace: need at least one point");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      std::ostringstream msg;
      msg << "MeasureSpace: weight " << i << " = " << weights_[i] << " is not strictly positive";
      throw InvalidArgument(msg.str());
    }
  }
  total_mass_ = weights_.sum();
}

MeasureSpace MeasureSpace::uniform(Eigen::Index n, double mass_per_point) {
  return MeasureSpace(Vector::Constant(n, mass_per_point));
}

MeasureSpace MeasureSpace::probability(Eigen::Index n) {
  return MeasureSpace(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

double MeasureSpace::inner(const Vector& f, const Vector& g) const {
  return (weights_.array() * f.array() * g.array()).sum();
}

double MeasureSpace::norm(const Vector& f, double p) const {
  if (!(p >= 1.0)) throw InvalidArgument("MeasureSpace::norm: p must be >= 1");
  if (p == 1.0) return (weights_.array() * f.array().abs()).sum();
  if (p == 2.0) return norm2(f);
  return std::pow((weights_.array() * f.array().abs().pow(p)).sum(), 1.0 / p);
}

double MeasureSpace::norm2_squared(const Vector& f) const {
  return (weights_.array() * f.array().square()).sum();
}

double MeasureSpace::norm2(const Vector& f) const { return std::sqrt(norm2_squared(f)); }

double MeasureSpace::norm_inf(const Vector& f) const { return f.cwiseAbs().maxCoeff(); }

ScalarFunction ScalarFunction::identity() {
  return {[](double x) { return x; }, true, true, "x"};
}

ScalarFunction ScalarFunction::power(double exponent) {
  return {[exponent](double x) { return std::pow(x, exponent); }, exponent >= 0.0,
          exponent >= 1.0 || exponent == 0.0, "x^" + std::to_string(exponent)};
}

ScalarFunction ScalarFunction::heat(double t) {
  return {[t](double x) { return std::exp(-t * x); }, t <= 0.0, true,
          "exp(-" + std::to_string(t) + "x)"};
}

ScalarFunction ScalarFunction::fractional_heat(double t, double alpha) {
  return {[t, alpha](double x) { return std::exp(-t * std::pow(x, alpha)); }, t <= 0.0, false,
          "exp(-" + std::to_string(t) + "x^" + std::to_string(alpha) + ")"};
}

bool spot_check(const ScalarFunction& phi, std::span<const double> grid, double rel_tol) {
  if (grid.size() < 2) return true;
  std::vector<double> xs(grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys[i] = phi(xs[i]);
    if (!std::isfinite(ys[i])) return false;
  }
  auto slack = [&](double a, double b) { return rel_tol * std::max({1.0, std::abs(a), std::abs(b)}); };
  if (phi.non_decreasing) {
    for (std::size_t i = 1; i < ys.size(); ++i)
      if (ys[i] < ys[i - 1] - slack(ys[i], ys[i - 1])) return false;
  }
  if (phi.convex) {
    // Slopes of consecutive chords must be non-decreasing.
    for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
      const double h0 = xs[i] - xs[i - 1];
      const double h1 = xs[i + 1] - xs[i];
      if (h0 <= 0.0 || h1 <= 0.0) continue;
      const double interp = (ys[i - 1] * h1 + ys[i + 1] * h0) / (h0 + h1);
      if (ys[i] > interp + slack(ys[i], interp)) return false;
    }
  }
  return true;
}

SpectralOperator::SpectralOperator(MeasureSpace space, Vector eigenvalues, Matrix eigenvectors)
    : space_(std::move(space)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {
  const Eigen::Index n = space_.size();
  if (eigenvalues_.size() != n || eigenvectors_.rows() != n || eigenvectors_.cols() != n)
    throw InvalidArgument("SpectralOperator: dimension mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(eigenvalues_[i] >= 0.0))
      throw InvalidArgument("SpectralOperator: eigenvalues must be non-negative");
  }
}

double SpectralOperator::max_eigenvalue() const { return eigenvalues_.maxCoeff(); }

Vector SpectralOperator::coefficients(const Vector& f) const {
  if (f.size() != size()) throw InvalidArgument("coefficients: dimension mismatch");
  return eigenvectors_.transpose() * space_.weights().cwiseProduct(f);
}

Vector SpectralOperator::synthesize(const Vector& coeffs) const { return eigenvectors_ * coeffs; }

Matrix SpectralOperator::matrix() const {
  return eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose() *
         space_.weights().asDiagonal();
}

SpectralOperator eigendecompose(const Matrix& matrix, const MeasureSpace& space) {
  const Eigen::Index n = space.size();
  if (matrix.rows() != n || matrix.cols() != n)
    throw InvalidArgument("eigendecompose: matrix size does not match the measure space");
  if (!matrix.allFinite()) throw InvalidArgument("eigendecompose: matrix has non-finite entries");

  const Vector sqrt_w = space.weights().cwiseSqrt();
  const Vector inv_sqrt_w = sqrt_w.cwiseInverse();
  // W^{1/2} M W^{-1/2} is symmetric exactly when M is W-self-adjoint.
  Matrix sym = sqrt_w.asDiagonal() * matrix * inv_sqrt_w.asDiagonal();
  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  const double asym = (sym - sym.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "eigendecompose: matrix is not self-adjoint in the weighted inner product "
        << "(asymmetry " << asym << ")";
    throw AsymmetryError(msg.str(), asym);
  }
  sym = 0.5 * (sym + sym.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecompose: eigensolver failed");

  Vector lambda = solver.eigenvalues();
  const double clamp = 1e-10 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda[i] < 0.0) {
      if (lambda[i] < -clamp) {
        std::ostringstream msg;
        msg << "eigendecompose: operator is not non-negative (eigenvalue " << lambda[i] << ")";
        throw InvalidArgument(msg.str());
      }
      lambda[i] = 0.0;
    }
  }
  Matrix u = inv_sqrt_w.asDiagonal() * solver.eigenvectors();
  return SpectralOperator(space, std::move(lambda), std::move(u));
}

namespace {

Vector evaluate_on_spectrum(const SpectralOperator& op, const ScalarFunction& phi) {
  Vector values(op.size());
  for (Eigen::Index i = 0; i < op.size(); ++i) {
    const double lambda = op.eigenvalues()[i];
    values[i] = phi(lambda);
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "apply_function: " << (phi.name.empty() ? "function" : phi.name)
          << " is not finite at eigenvalue " << lambda;
      throw SpectrumDomainError(msg.str(), lambda);
    }
  }
  return values;
}

}  // namespace

Matrix apply_function(const SpectralOperator& op, const ScalarFunction& phi) {
  const Vector values = evaluate_on_spectrum(op, phi);
  const Matrix& u = op.eigenvectors();
  return u * values.asDiagonal() * u.transpose() * op.space().weights().asDiagonal();
}

Vector apply_function(const SpectralOperator& op, const ScalarFunction& phi, const Vector& f) {
  const Vector values = evaluate_on_spectrum(op, phi);
  return op.synthesize(values.cwiseProduct(op.coefficients(f)));
}

double quadratic_form(const SpectralOperator& op, double alpha, const Vector& f) {
  const Vector c = op.coefficients(f);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double lambda = op.eigenvalues()[i];
    const double weight = alpha == 0.0 ? 1.0 : std::pow(lambda, alpha);
    sum += weight * c[i] * c[i];
  }
  return sum;
}

double spectral_form(const SpectralOperator& op, const ScalarFunction& phi, const Vector& f) {
  const Vector values = evaluate_on_spectrum(op, phi);
  const Vector c = op.coefficients(f);
  return (values.array() * c.array().square()).sum();
}

Matrix heat_semigroup(const SpectralOperator& op, double t) {
  return apply_function(op, ScalarFunction::heat(t));
}

double norm_1_to_inf(const Matrix& kernel, const MeasureSpace& space) {
  if (kernel.cols() != space.size())
    throw InvalidArgument("norm_1_to_inf: kernel columns do not match the measure space");
  return (kernel.cwiseAbs() * space.weights().cwiseInverse().asDiagonal()).maxCoeff();
}

}  // namespace fracnash::spectral
