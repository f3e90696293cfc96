// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ccr/config.hpp"

namespace ccr {

// -- integer-order incomplete gamma functions ------------------------------

/// L(n, s) = int_0^s t^(n-1) e^-t dt, n >= 1.
double lower_incomplete_gamma(int order, double s);
/// U(n, s) = int_s^inf t^(n-1) e^-t dt = (n-1)! e^-s sum_{i<n} s^i / i!.
double upper_incomplete_gamma(int order, double s);
/// L(n, s) / (n-1)!: the Gamma(n, 1) CDF at s.  Accurate for small s.
double regularized_lower_gamma(int order, double s);
/// U(n, s) / (n-1)!.
double regularized_upper_gamma(int order, double s);

// -- outage probabilities --------------------------------------------------

/// Primary outage split into the two exclusive events.
struct OutageBreakdown {
  double nu1 = 0.0;        ///< K >= 2 and the (combined) relayed signal is undecodable
  double nu2 = 0.0;        ///< K < 2 (and, with a direct link, the direct link fails)
  double nu = 0.0;         ///< nu1 + nu2 clipped to [0, 1]
  double unclipped = 0.0;  ///< nu1 + nu2 before clipping
};

/// Per-phase thresholds derived from a config.
struct LinkThresholds {
  double broadcast_rate = 0.0;  ///< rate of the primary broadcast phase
  double forward_rate = 0.0;    ///< rate the primary destination must support after relaying
  double q_broadcast = 0.0;     ///< (2^broadcast_rate - 1) / gamma_p
  double q_forward = 0.0;       ///< (2^forward_rate - 1) / gamma_p
  double decode_prob = 1.0;     ///< per-relay decoding probability exp(-q_broadcast)
  double decode_fail = 0.0;     ///< 1 - decode_prob, via expm1
};

/// DirectLink: both phases at 2R.  NoDirectLink: R / zeta then R / (1 - zeta).
LinkThresholds link_thresholds(const SystemConfig& cfg);

/// E[(1 + phi)^n] for phi ~ Exp(mean gamma_s).
double interference_moment(int n, double gamma_s);

/// Case 1 outage conditioned on phi = gamma_s |h_v_pd|^2, averaged over the
/// decoding set and the direct-link gain.
OutageBreakdown case1_outage_given_phi(const SystemConfig& cfg, double phi);
/// case1_outage_given_phi averaged over phi by adaptive quadrature.
/// Throws QuadratureFailure if the 1e-8 relative tolerance is not reached.
OutageBreakdown case1_outage(const SystemConfig& cfg);
/// Leading-order high-SNR expansion (proportional to Q^(M-1)).
double case1_outage_highsnr(const SystemConfig& cfg);

OutageBreakdown case2_outage_given_phi(const SystemConfig& cfg, double phi);
/// Closed form of the phi-average (upper incomplete gamma series).
OutageBreakdown case2_outage(const SystemConfig& cfg);
/// Leading-order high-SNR expansion (proportional to gamma^-(M-2)), all
/// decoding-set sizes retained.
double case2_outage_highsnr(const SystemConfig& cfg);

/// Single dominant term of the case 2 expansion in the growing-rate regime
/// that defines the DMT: the K = M-1 term when zeta >= 1/2 (relay phase is
/// the bottleneck), the K = 1 term when zeta < 1/2 (broadcast phase is).
struct DominantOutageTerm {
  bool relay_phase_limited = false;
  double base = 0.0;     ///< 2^(R/(1-zeta)) or 2^(R/zeta)
  double bracket = 0.0;  ///< multiplier of (base / gamma)^(M-2)
  double value = 0.0;
};
DominantOutageTerm case2_outage_dominant(const SystemConfig& cfg);

/// Exact primary outage for cfg.link.
double primary_outage(const SystemConfig& cfg);
/// High-SNR expansion for cfg.link.
double primary_outage_highsnr(const SystemConfig& cfg);

}  // namespace ccr
