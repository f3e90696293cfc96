// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/beamform.hpp"

#include <cmath>
#include <stdexcept>

#include "ccr/error.hpp"

namespace ccr {

namespace {

// a^H b
cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double squared_norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const cplx& x : a) acc += std::norm(x);
  return acc;
}

}  // namespace

Eigen::MatrixXcd projection_matrix(std::span<const cplx> h_sd) {
  const double energy = squared_norm(h_sd);
  if (!(energy >= kDegeneracyFloor)) throw DegenerateChannel("secondary-destination channel vector is null");
  const auto n = static_cast<Eigen::Index>(h_sd.size());
  const Eigen::Map<const Eigen::VectorXcd> v(h_sd.data(), n);
  return Eigen::MatrixXcd::Identity(n, n) - (v * v.adjoint()) / energy;
}

BeamformerResult optimal_weights(std::span<const cplx> h_pd, std::span<const cplx> h_sd) {
  if (h_pd.size() != h_sd.size()) throw std::invalid_argument("h_pd and h_sd must have equal length");
  const double energy = squared_norm(h_sd);
  if (!(energy >= kDegeneracyFloor)) throw DegenerateChannel("secondary-destination channel vector is null");

  // Psi h_pd = h_pd - h_sd (h_sd^H h_pd) / ||h_sd||^2
  const cplx coeff = inner(h_sd, h_pd) / energy;
  BeamformerResult out;
  out.g.resize(h_pd.size());
  for (std::size_t i = 0; i < h_pd.size(); ++i) out.g[i] = h_pd[i] - coeff * h_sd[i];

  out.alpha = squared_norm(out.g);
  if (!(out.alpha >= kDegeneracyFloor)) throw DegenerateChannel("h_pd lies in span{h_sd}");
  const double scale = 1.0 / std::sqrt(out.alpha);
  for (auto& w : out.g) w *= scale;
  out.leakage = std::norm(inner(out.g, h_sd));
  return out;
}

bool optimal_weights_into(std::span<const cplx> h_pd, std::span<const cplx> h_sd, BeamformerResult& out) {
  out.g.resize(h_pd.size());
  out.alpha = 0.0;
  out.leakage = 0.0;
  const double energy = squared_norm(h_sd);
  if (!(energy >= kDegeneracyFloor) || h_pd.size() != h_sd.size()) return false;
  const cplx coeff = inner(h_sd, h_pd) / energy;
  double gain = 0.0;
  for (std::size_t i = 0; i < h_pd.size(); ++i) {
    out.g[i] = h_pd[i] - coeff * h_sd[i];
    gain += std::norm(out.g[i]);
  }
  if (!(gain >= kDegeneracyFloor)) return false;
  const double scale = 1.0 / std::sqrt(gain);
  for (auto& w : out.g) w *= scale;
  out.alpha = gain;
  out.leakage = std::norm(inner(out.g, h_sd));
  return true;
}

double projected_gain(std::span<const cplx> h_pd, std::span<const cplx> h_sd) {
  const double energy = squared_norm(h_sd);
  if (!(energy >= kDegeneracyFloor)) return 0.0;
  const cplx coeff = inner(h_sd, h_pd) / energy;
  double gain = 0.0;
  for (std::size_t i = 0; i < h_pd.size(); ++i) gain += std::norm(h_pd[i] - coeff * h_sd[i]);
  return gain >= kDegeneracyFloor ? gain : 0.0;
}

double received_sinr_pd(const BeamformerResult& result, const SystemConfig& cfg, double alpha_v_pd) {
  return result.alpha * cfg.gamma_p / (1.0 + cfg.gamma_s * alpha_v_pd);
}

}  // namespace ccr
