// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "ccr/config.hpp"
#include "ccr/rng.hpp"

namespace ccr {

using cplx = std::complex<double>;

/// One slot's fading coefficients.  The scheduled secondary source is
/// relabelled out of the relay index space, so relays are always 0..M-2.
struct ChannelRealization {
  cplx h_p_pd{};                ///< primary source -> primary destination
  std::vector<cplx> h_p_relay;  ///< primary source -> relay k
  std::vector<cplx> h_relay_pd; ///< relay k -> primary destination
  std::vector<cplx> h_relay_sd; ///< relay k -> secondary destination
  cplx h_v_pd{};                ///< scheduled secondary -> primary destination
  cplx h_v_sd{};                ///< scheduled secondary -> secondary destination
};

struct DecodingSet {
  std::vector<int> members;  ///< ascending relay indices
  int size() const { return static_cast<int>(members.size()); }
};

/// Draws all coefficients i.i.d. CN(0, 1).  `h_p_pd` is exactly zero in the
/// NoDirectLink case (and consumes no randomness).
ChannelRealization draw_realization(const SystemConfig& cfg, RandomStream& stream);

/// Allocation-free variant for inner loops; resizes `out` as needed.
void draw_realization(const SystemConfig& cfg, RandomStream& stream, ChannelRealization& out);

/// 2^rate - 1, accurate for small rates.
double snr_threshold(double rate);

/// Probability that one relay decodes a broadcast at `rate_tx`:
/// exp(-(2^rate_tx - 1) / gamma_p).
double decoding_probability(double rate_tx, double gamma_p);

/// Relay k decodes iff log2(1 + gamma_p |h_p_relay[k]|^2) >= rate_tx.
DecodingSet form_decoding_set(const SystemConfig& cfg, const ChannelRealization& ch, double rate_tx);

double binomial(int n, int k);

/// Pr{|Lambda| = K}, K ~ Binomial(num_relays, decode_prob).  The four-argument
/// form takes 1 - decode_prob precomputed (e.g. via expm1) to keep precision
/// when decoding is almost certain.
double decoding_set_pmf(int num_relays, int k, double decode_prob);
double decoding_set_pmf(int num_relays, int k, double decode_prob, double fail_prob);

}  // namespace ccr
