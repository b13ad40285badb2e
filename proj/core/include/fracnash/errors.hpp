// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracnash {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad size, negative time, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input matrix is not self-adjoint in the weighted inner product.
class AsymmetryError : public Error {
 public:
  AsymmetryError(const std::string& what, double asymmetry)
      : Error(what), asymmetry_(asymmetry) {}
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

/// A scalar function produced NaN or infinity on the spectrum.
class SpectrumDomainError : public Error {
 public:
  SpectrumDomainError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Quadrature did not reach its tolerance within the node budget.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_error, std::int64_t nodes)
      : Error(what), achieved_error_(achieved_error), nodes_(nodes) {}
  double achieved_error() const noexcept { return achieved_error_; }
  std::int64_t nodes() const noexcept { return nodes_; }

 private:
  double achieved_error_;
  std::int64_t nodes_;
};

/// Generic numerical failure (non-integrable tail, unbounded objective, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The torus truncation level is too small for the requested tolerance.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::uint64_t suggested_k)
      : Error(what), suggested_k_(suggested_k) {}
  std::uint64_t suggested_k() const noexcept { return suggested_k_; }

 private:
  std::uint64_t suggested_k_;
};

}  // namespace fracnash
