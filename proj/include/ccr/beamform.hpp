// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "ccr/config.hpp"

namespace ccr {

using cplx = std::complex<double>;

/// Squared-norm floor below which a channel vector is treated as null.
inline constexpr double kDegeneracyFloor = 1e-30;

/// Zero-forcing beamformer for the decoding relays.
struct BeamformerResult {
  std::vector<cplx> g;  ///< unit-norm weights, orthogonal to h_sd
  double alpha = 0.0;   ///< |g^H h_pd|^2 = ||Psi h_pd||^2
  double leakage = 0.0; ///< |g^H h_sd|^2 residual at the secondary destination
};

/// Psi = I - h_sd (h_sd^H h_sd)^-1 h_sd^H, the projector onto span{h_sd}^perp.
/// Materialized for inspection only; the beamformer applies it as a rank-1
/// update.  Throws DegenerateChannel if ||h_sd||^2 < kDegeneracyFloor.
Eigen::MatrixXcd projection_matrix(std::span<const cplx> h_sd);

/// Maximizes |g^H h_pd|^2 subject to g^H h_sd = 0 and ||g|| = 1:
/// g* = Psi h_pd / ||Psi h_pd||.  Throws DegenerateChannel when h_sd is null
/// or h_pd lies in span{h_sd}.
BeamformerResult optimal_weights(std::span<const cplx> h_pd, std::span<const cplx> h_sd);

/// Non-throwing form of optimal_weights that reuses `out` storage.  Returns
/// false (with alpha = leakage = 0) for degenerate inputs.
bool optimal_weights_into(std::span<const cplx> h_pd, std::span<const cplx> h_sd, BeamformerResult& out);

/// ||Psi h_pd||^2 without forming g; returns 0 for degenerate inputs.
/// Inner-loop form of optimal_weights(...).alpha.
double projected_gain(std::span<const cplx> h_pd, std::span<const cplx> h_sd);

/// alpha * gamma_p / (1 + gamma_s * alpha_v_pd).
double received_sinr_pd(const BeamformerResult& result, const SystemConfig& cfg, double alpha_v_pd);

}  // namespace ccr
