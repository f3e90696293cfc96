// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <string>

#include "ccr/error.hpp"

namespace ccr {

/// E[f(phi)] for phi ~ Exp(mean gamma_s), i.e. int_0^inf f(gamma_s t) e^-t dt.
///
/// Adaptive Gauss-Kronrod (7/15) on [0, T]; the window starts where e^-T is
/// below 1e-12 and doubles until the newest slab is negligible relative to
/// the running total.  `f` must be nonnegative.
template <class F>
double average_over_interference(F&& f, double gamma_s, double rel_tol = 1e-8) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto integrand = [&](double t) { return f(gamma_s * t) * std::exp(-t); };

  // `reference` is the magnitude the slab's error is judged against.
  auto slab = [&](double a, double b, double reference) {
    double error = 0.0;
    const double value = Rule::integrate(integrand, a, b, 20, rel_tol * 0.1, &error);
    const double scale = std::max(std::abs(value), reference);
    if (!(error <= rel_tol * scale || error < 1e-300)) {
      throw QuadratureFailure("interference average did not reach relative tolerance " +
                              std::to_string(rel_tol) + " on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
    return value;
  };

  double upper = 28.0;
  double total = slab(0.0, upper, 0.0);
  for (int doubling = 0; doubling < 8; ++doubling) {
    const double piece = slab(upper, 2.0 * upper, total);
    total += piece;
    upper *= 2.0;
    if (piece <= 1e-3 * rel_tol * total) return total;
  }
  throw QuadratureFailure("interference average: tail did not converge");
}

}  // namespace ccr
