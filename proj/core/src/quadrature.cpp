// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/quadrature.hpp"

#include "fracnash/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace fracnash::numerics {

IntegralEstimate integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, unsigned max_depth) {
  if (a == b) return {};
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol,
                                                                     &error);
  return {value, error};
}

Maximum golden_section_max(const std::function<double(double)>& f, double a, double b,
                           double x_tol, int max_iter) {
  constexpr double inv_phi = 0.6180339887498948482;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && std::abs(b - a) > x_tol * (1.0 + std::abs(a) + std::abs(b));
       ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
}

double bisect(const std::function<double(double)>& f, double a, double b, double x_tol,
              int max_iter) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw NumericalError("bisect: root is not bracketed");
  for (int it = 0; it < max_iter && std::abs(b - a) > x_tol * (1.0 + std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace fracnash::numerics
