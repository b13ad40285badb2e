// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace fracnash::numerics {

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (31 points) on a finite interval.  `rel_tol` is
/// relative to the integral; `error` is Boost's (unscaled) leaf estimate and
/// only indicative.
IntegralEstimate integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, unsigned max_depth = 20);

/// Maximizer of a unimodal function on [a, b] by golden-section search.
struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};
Maximum golden_section_max(const std::function<double(double)>& f, double a, double b,
                           double x_tol = 1e-12, int max_iter = 200);

/// Root of a continuous function with f(a) f(b) <= 0 by bisection.
double bisect(const std::function<double(double)>& f, double a, double b, double x_tol = 1e-13,
              int max_iter = 400);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

}  // namespace fracnash::numerics
