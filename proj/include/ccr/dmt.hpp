// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ccr/config.hpp"

namespace ccr {

struct DmtPoint {
  double r = 0.0;  ///< multiplexing gain
  double d = 0.0;  ///< diversity gain
};

struct DmtCurve {
  LinkCase link = LinkCase::DirectLink;
  double zeta = 0.5;
  std::vector<DmtPoint> points;
};

/// Largest multiplexing gain: 1/2 with a direct link, min(zeta, 1 - zeta) without.
double max_multiplexing_gain(const SystemConfig& cfg);

/// Analytic d(r) at one point: (1 - 2r)(M - 1), or (1 - r / min(zeta, 1-zeta))(M - 2).
double analytic_diversity(const SystemConfig& cfg, double r);

/// `num_points` (>= 2) uniformly spaced r over [0, r_max], both ends included.
DmtCurve analytic_dmt(const SystemConfig& cfg, int num_points);

enum class OutageSource { ClosedForm, MonteCarlo };

struct MonteCarloBudget {
  std::int64_t min_trials = 1'000'000;
  std::int64_t max_trials = 200'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Negated least-squares slope of ln(nu) against ln(gamma) over the upper
/// half of `gamma_grid`, with the rate growing as R(gamma) = cfg.rate +
/// r log2(gamma) at each point (so r = 0 means the fixed rate cfg.rate).
///
/// MonteCarlo points are limited to gamma <= 1e4 and use
/// max(min_trials, 100 / nu_closed) slots.  Throws DegenerateFit if any nu
/// in the fitted range is zero, or if the Monte Carlo budget would be
/// exceeded.
double empirical_diversity(const SystemConfig& cfg, double r, std::span<const double> gamma_grid,
                           OutageSource source, const MonteCarloBudget& budget = {});

}  // namespace ccr
