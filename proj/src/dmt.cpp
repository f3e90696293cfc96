// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccr/analytic.hpp"
#include "ccr/error.hpp"
#include "ccr/simulate.hpp"

namespace ccr {

double max_multiplexing_gain(const SystemConfig& cfg) {
  return cfg.link == LinkCase::DirectLink ? 0.5 : std::min(cfg.zeta, 1.0 - cfg.zeta);
}

double analytic_diversity(const SystemConfig& cfg, double r) {
  const double r_max = max_multiplexing_gain(cfg);
  const double order = cfg.link == LinkCase::DirectLink ? cfg.num_users - 1.0 : cfg.num_users - 2.0;
  return std::max(0.0, (1.0 - r / r_max) * order);
}

DmtCurve analytic_dmt(const SystemConfig& cfg, int num_points) {
  if (num_points < 2) throw std::invalid_argument("num_points must be >= 2");
  validate(cfg);
  DmtCurve curve;
  curve.link = cfg.link;
  curve.zeta = cfg.zeta;
  const double r_max = max_multiplexing_gain(cfg);
  for (int i = 0; i < num_points; ++i) {
    const double r = r_max * i / (num_points - 1);
    curve.points.push_back({r, analytic_diversity(cfg, r)});
  }
  return curve;
}

double empirical_diversity(const SystemConfig& cfg, double r, std::span<const double> gamma_grid,
                           OutageSource source, const MonteCarloBudget& budget) {
  validate(cfg);
  if (gamma_grid.size() < 3) throw std::invalid_argument("gamma grid needs at least 3 points");
  if (!std::is_sorted(gamma_grid.begin(), gamma_grid.end()))
    throw std::invalid_argument("gamma grid must be ascending");
  if (gamma_grid.back() < 1e3) throw std::invalid_argument("gamma grid must reach 1e3");
  if (!(r >= 0.0 && r < max_multiplexing_gain(cfg))) throw std::invalid_argument("r outside [0, r_max)");
  if (source == OutageSource::MonteCarlo && gamma_grid.back() > 1e4)
    throw std::invalid_argument("Monte Carlo diversity estimates are limited to gamma <= 1e4");

  const std::size_t first = gamma_grid.size() / 2;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = first; i < gamma_grid.size(); ++i) {
    SystemConfig point = cfg;
    point.gamma_p = gamma_grid[i];
    point.rate = cfg.rate + r * std::log2(gamma_grid[i]);
    double nu = primary_outage(point);
    if (source == OutageSource::MonteCarlo) {
      if (!(nu > 0.0)) throw DegenerateFit("closed-form outage vanished; cannot size Monte Carlo run");
      const double wanted = std::ceil(100.0 / nu);
      if (wanted > static_cast<double>(budget.max_trials))
        throw DegenerateFit("outage too rare for the Monte Carlo budget at gamma=" + std::to_string(gamma_grid[i]));
      const auto trials = std::max(budget.min_trials, static_cast<std::int64_t>(wanted));
      nu = estimate_outage(point, trials, mix_seed(budget.seed + i), budget.workers).primary.p_hat;
    }
    if (!(nu > 0.0)) throw DegenerateFit("outage is numerically zero at gamma=" + std::to_string(gamma_grid[i]));
    xs.push_back(std::log(gamma_grid[i]));
    ys.push_back(std::log(nu));
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return -sxy / sxx;
}

}  // namespace ccr
