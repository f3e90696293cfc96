// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/qos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ccr/analytic.hpp"
#include "ccr/channel.hpp"
#include "ccr/error.hpp"

namespace ccr {

namespace {

void check_user(const SystemConfig& cfg, int k) {
  if (k < 0 || k >= cfg.num_users) throw std::out_of_range("user index " + std::to_string(k) + " out of range");
}

double others_sum(const std::vector<double>& lambdas, int k) {
  double sum = 0.0;
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    if (static_cast<int>(j) != k) sum += lambdas[j];
  return sum;
}

}  // namespace

double secondary_success_prob(const SystemConfig& cfg) {
  const double rate = cfg.link == LinkCase::DirectLink ? 2.0 * cfg.rate : cfg.rate / (1.0 - cfg.zeta);
  return std::exp(-snr_threshold(rate) / cfg.gamma_s);
}

double secondary_throughput(const SystemConfig& cfg, double omega_j) {
  if (!(omega_j >= 0.0 && omega_j <= 1.0)) throw std::invalid_argument("omega_j must lie in [0, 1]");
  return omega_j * secondary_success_prob(cfg);
}

QosSolution evaluate_assignment(const SystemConfig& cfg, int k) {
  validate(cfg);
  check_user(cfg, k);
  const auto lambdas = secondary_targets(cfg);
  const double f = secondary_success_prob(cfg);

  QosSolution sol;
  sol.zeta = cfg.zeta;
  sol.primary_outage = primary_outage(cfg);
  const double others = others_sum(lambdas, k);
  sol.slack = f - (others + lambdas[k]);
  sol.lambda_k_max = std::max(0.0, f - others);

  if (cfg.lambda_p > 1.0 - sol.primary_outage) {
    sol.status = QosStatus::PrimaryInfeasible;
    sol.lambda_k_max = 0.0;
    return sol;
  }
  if (sol.slack < 0.0) {
    sol.status = QosStatus::SecondaryInfeasible;
    return sol;
  }

  sol.status = QosStatus::Feasible;
  sol.feasible = true;
  sol.omega.assign(lambdas.size(), 0.0);
  double assigned = 0.0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    if (static_cast<int>(j) == k || lambdas[j] == 0.0) continue;
    sol.omega[j] = lambdas[j] / f;
    assigned += sol.omega[j];
  }
  sol.omega[k] = std::clamp(1.0 - assigned, 0.0, 1.0);
  return sol;
}

double max_lambda_k(const SystemConfig& cfg, int k) {
  const auto sol = evaluate_assignment(cfg, k);
  if (sol.status == QosStatus::PrimaryInfeasible)
    throw PrimaryInfeasible("primary target " + std::to_string(cfg.lambda_p) + " exceeds 1 - nu = " +
                            std::to_string(1.0 - sol.primary_outage));
  return sol.lambda_k_max;
}

QosSolution solve_assignment(const SystemConfig& cfg, int k) {
  auto sol = evaluate_assignment(cfg, k);
  if (sol.status == QosStatus::PrimaryInfeasible)
    throw PrimaryInfeasible("primary target " + std::to_string(cfg.lambda_p) + " exceeds 1 - nu = " +
                            std::to_string(1.0 - sol.primary_outage));
  if (sol.status == QosStatus::SecondaryInfeasible)
    throw SecondaryInfeasible("secondary targets exceed the success probability by " + std::to_string(-sol.slack));
  return sol;
}

QosSolution search_zeta(const SystemConfig& cfg, int k, int grid_size) {
  if (cfg.link != LinkCase::NoDirectLink) throw InvalidCase("search_zeta requires case=nodirect");
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
  validate(cfg);
  check_user(cfg, k);

  QosSolution best;
  best.status = QosStatus::PrimaryInfeasible;
  best.zeta = std::numeric_limits<double>::quiet_NaN();
  bool found = false;
  SystemConfig trial = cfg;
  for (int i = 1; i <= grid_size; ++i) {
    trial.zeta = static_cast<double>(i) / (grid_size + 1);
    auto sol = evaluate_assignment(trial, k);
    if (sol.status == QosStatus::PrimaryInfeasible) continue;
    if (!found || sol.slack > best.slack) {
      best = std::move(sol);
      found = true;
    }
  }
  return best;
}

}  // namespace ccr
