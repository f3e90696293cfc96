// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "ccr/analytic.hpp"

namespace ccr {

namespace {

void check_args(int order, double s) {
  if (order < 1) throw std::invalid_argument("incomplete gamma order must be >= 1");
  if (!(s >= 0.0)) throw std::invalid_argument("incomplete gamma argument must be >= 0");
}

// e^-s s^n / n! * sum_i s^i n! / (n+i)!; converges geometrically for s < n + 1.
double lower_series(int order, double s) {
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < 10000; ++i) {
    term *= s / (order + i);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(-s + order * std::log(s) - std::lgamma(order + 1.0)) * sum;
}

// e^-s sum_{i<n} s^i / i!, summed in log space so large s cannot overflow.
double upper_finite_sum(int order, double s) {
  const double log_s = std::log(s);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) sum += std::exp(-s + i * log_s - std::lgamma(i + 1.0));
  return sum;
}

}  // namespace

double regularized_upper_gamma(int order, double s) {
  check_args(order, s);
  if (s == 0.0) return 1.0;
  if (std::isinf(s)) return 0.0;
  return upper_finite_sum(order, s);
}

double regularized_lower_gamma(int order, double s) {
  check_args(order, s);
  if (s == 0.0) return 0.0;
  if (std::isinf(s)) return 1.0;
  if (s < order) return lower_series(order, s);
  return 1.0 - upper_finite_sum(order, s);
}

double lower_incomplete_gamma(int order, double s) {
  return std::tgamma(static_cast<double>(order)) * regularized_lower_gamma(order, s);
}

double upper_incomplete_gamma(int order, double s) {
  return std::tgamma(static_cast<double>(order)) * regularized_upper_gamma(order, s);
}

}  // namespace ccr
