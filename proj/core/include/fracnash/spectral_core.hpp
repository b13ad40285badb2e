// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>

namespace fracnash::spectral {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A finite measure space: n points carrying strictly positive masses.
///
/// All norms and inner products in the library are taken with respect to
/// these weights, so counting-measure graphs, lattices with cell volume h^d
/// and Gauss-Hermite nodes share one implementation.
class MeasureSpace {
 public:
  explicit MeasureSpace(Vector weights);

  static MeasureSpace uniform(Eigen::Index n, double mass_per_point = 1.0);
  /// Uniform weights summing to one.
  static MeasureSpace probability(Eigen::Index n);

  Eigen::Index size() const noexcept { return weights_.size(); }
  const Vector& weights() const noexcept { return weights_; }
  double total_mass() const noexcept { return total_mass_; }

  double inner(const Vector& f, const Vector& g) const;
  /// ||f||_p = (sum_i w_i |f_i|^p)^(1/p) for finite p >= 1.
  double norm(const Vector& f, double p) const;
  double norm1(const Vector& f) const { return norm(f, 1.0); }
  double norm2(const Vector& f) const;
  double norm2_squared(const Vector& f) const;
  double norm_inf(const Vector& f) const;

 private:
  Vector weights_;
  double total_mass_;
};

/// Scalar function on [0, inf) fed to the functional calculus.
///
/// The monotonicity / convexity flags are declarations; `spot_check` tests
/// them on a grid.
struct ScalarFunction {
  std::function<double(double)> fn;
  bool non_decreasing = false;
  bool convex = false;
  std::string name;

  double operator()(double x) const { return fn(x); }

  static ScalarFunction identity();
  static ScalarFunction power(double exponent);
  /// x -> exp(-t x)
  static ScalarFunction heat(double t);
  /// x -> exp(-t x^alpha)
  static ScalarFunction fractional_heat(double t, double alpha);
};

/// Returns true when the declared flags hold on the sampled grid (up to a
/// relative tolerance `rel_tol` on the function values).
bool spot_check(const ScalarFunction& phi, std::span<const double> grid, double rel_tol = 1e-12);

/// Eigendecomposition of a non-negative operator, self-adjoint in the
/// weighted inner product of `space`.
///
/// Eigenvalues are ascending; eigenvector columns are orthonormal in the
/// weighted inner product, i.e. U^T W U = I.
class SpectralOperator {
 public:
  SpectralOperator(MeasureSpace space, Vector eigenvalues, Matrix eigenvectors);

  const MeasureSpace& space() const noexcept { return space_; }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  Eigen::Index size() const noexcept { return eigenvalues_.size(); }
  double max_eigenvalue() const;

  /// Spectral coefficients c_i = <f, u_i>_mu.
  Vector coefficients(const Vector& f) const;
  /// Inverse of `coefficients`: sum_i c_i u_i.
  Vector synthesize(const Vector& coeffs) const;

  /// The operator as a matrix acting on coordinate vectors.
  Matrix matrix() const;

 private:
  MeasureSpace space_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// Diagonalizes `matrix`.  Throws AsymmetryError when W M differs from its
/// transpose beyond tolerance and InvalidArgument when an eigenvalue is
/// negative beyond 1e-10 (relative to the spectral scale).
SpectralOperator eigendecompose(const Matrix& matrix, const MeasureSpace& space);

/// Phi(A) = sum_i Phi(lambda_i) u_i <u_i, .>_mu.  Throws SpectrumDomainError
/// naming the first eigenvalue where Phi is not finite.
Matrix apply_function(const SpectralOperator& op, const ScalarFunction& phi);

/// Phi(A) f without forming the matrix.
Vector apply_function(const SpectralOperator& op, const ScalarFunction& phi, const Vector& f);

/// (A^alpha f, f) = sum_i lambda_i^alpha |<f,u_i>|^2, with 0^0 = 1.
double quadratic_form(const SpectralOperator& op, double alpha, const Vector& f);

/// (Phi(A) f, f) = sum_i Phi(lambda_i) |<f,u_i>|^2.
double spectral_form(const SpectralOperator& op, const ScalarFunction& phi, const Vector& f);

/// e^{-tA} as a matrix.
Matrix heat_semigroup(const SpectralOperator& op, double t);

/// Operator norm L^1(mu) -> L^inf(mu): max_{i,j} |M_ij| / w_j.
double norm_1_to_inf(const Matrix& kernel, const MeasureSpace& space);

}  // namespace fracnash::spectral
