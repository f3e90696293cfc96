// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/channel.hpp"

#include <cmath>
#include <numbers>

namespace ccr {

void draw_realization(const SystemConfig& cfg, RandomStream& stream, ChannelRealization& out) {
  const auto relays = static_cast<std::size_t>(cfg.num_relays());
  out.h_p_relay.resize(relays);
  out.h_relay_pd.resize(relays);
  out.h_relay_sd.resize(relays);

  out.h_p_pd = cfg.link == LinkCase::DirectLink ? stream.complex_normal() : cplx{0.0, 0.0};
  for (auto& h : out.h_p_relay) h = stream.complex_normal();
  for (auto& h : out.h_relay_pd) h = stream.complex_normal();
  for (auto& h : out.h_relay_sd) h = stream.complex_normal();
  out.h_v_pd = stream.complex_normal();
  out.h_v_sd = stream.complex_normal();
}

ChannelRealization draw_realization(const SystemConfig& cfg, RandomStream& stream) {
  ChannelRealization out;
  draw_realization(cfg, stream, out);
  return out;
}

double snr_threshold(double rate) { return std::expm1(rate * std::numbers::ln2); }

double decoding_probability(double rate_tx, double gamma_p) {
  return std::exp(-snr_threshold(rate_tx) / gamma_p);
}

DecodingSet form_decoding_set(const SystemConfig& cfg, const ChannelRealization& ch, double rate_tx) {
  const double threshold = snr_threshold(rate_tx);
  DecodingSet set;
  for (std::size_t k = 0; k < ch.h_p_relay.size(); ++k) {
    if (cfg.gamma_p * std::norm(ch.h_p_relay[k]) >= threshold) set.members.push_back(static_cast<int>(k));
  }
  return set;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

double decoding_set_pmf(int num_relays, int k, double decode_prob, double fail_prob) {
  if (k < 0 || k > num_relays) return 0.0;
  return binomial(num_relays, k) * std::pow(decode_prob, k) * std::pow(fail_prob, num_relays - k);
}

double decoding_set_pmf(int num_relays, int k, double decode_prob) {
  return decoding_set_pmf(num_relays, k, decode_prob, 1.0 - decode_prob);
}

}  // namespace ccr
