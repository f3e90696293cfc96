// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ccr/config.hpp"

namespace ccr {

enum class QosStatus { Feasible, PrimaryInfeasible, SecondaryInfeasible };

/// TDMA assignment for a fixed time split.  User indices are 0-based.
struct QosSolution {
  QosStatus status = QosStatus::SecondaryInfeasible;
  bool feasible = false;
  std::vector<double> omega;   ///< slot probabilities; empty unless feasible
  double zeta = 0.5;           ///< split used (echoed for DirectLink)
  double lambda_k_max = 0.0;   ///< largest target user k can be promised, >= 0
  double slack = 0.0;          ///< f - sum_j lambda_j
  double primary_outage = 0.0; ///< nu at this configuration
};

/// Probability that the scheduled secondary's own link is not in outage:
/// exp(-(2^(2R) - 1)/gamma_s) with a direct link, exp(-(2^(R/(1-zeta)) - 1)/gamma_s)
/// without.
double secondary_success_prob(const SystemConfig& cfg);

/// mu_j = omega_j f.
double secondary_throughput(const SystemConfig& cfg, double omega_j);

/// f - sum_{j != k} lambda_j, clamped at 0.  Throws PrimaryInfeasible when
/// lambda_p > 1 - nu.
double max_lambda_k(const SystemConfig& cfg, int k);

/// Non-throwing evaluation of both constraints and the closed-form
/// assignment omega_j = lambda_j / f (j != k), omega_k = 1 - sum of the rest.
QosSolution evaluate_assignment(const SystemConfig& cfg, int k);

/// As evaluate_assignment, but throws PrimaryInfeasible / SecondaryInfeasible.
QosSolution solve_assignment(const SystemConfig& cfg, int k);

/// Scans zeta = i / (grid_size + 1), i = 1..grid_size (NoDirectLink only).
/// Among splits meeting the primary constraint, returns the one with the
/// largest slack; ties go to the smaller zeta.  `feasible` is false if the
/// winning split still violates the secondary budget, or if no split meets
/// the primary constraint (then zeta is NaN).
QosSolution search_zeta(const SystemConfig& cfg, int k, int grid_size = 999);

}  // namespace ccr
