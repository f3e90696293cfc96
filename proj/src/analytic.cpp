// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccr/channel.hpp"
#include "ccr/error.hpp"
#include "ccr/quadrature.hpp"

namespace ccr {

namespace {

void require_case(const SystemConfig& cfg, LinkCase expected, const char* op) {
  if (cfg.link != expected) {
    throw InvalidCase(std::string(op) + " requires case=" + std::string(to_string(expected)));
  }
}

OutageBreakdown make_breakdown(double nu1, double nu2) {
  OutageBreakdown out;
  out.nu1 = std::clamp(nu1, 0.0, 1.0);
  out.nu2 = std::clamp(nu2, 0.0, 1.0);
  out.unclipped = nu1 + nu2;
  out.nu = std::clamp(out.unclipped, 0.0, 1.0);
  return out;
}

std::vector<double> decoding_pmf(int relays, const LinkThresholds& th) {
  std::vector<double> pmf(static_cast<std::size_t>(relays) + 1);
  for (int k = 0; k <= relays; ++k) pmf[k] = decoding_set_pmf(relays, k, th.decode_prob, th.decode_fail);
  return pmf;
}

// ---- case 1 ---------------------------------------------------------------
//
// With K >= 2 decoding relays, the combined SNR gamma a + alpha gamma/(1+phi)
// (a = |h_p_pd|^2 ~ Exp(1), alpha ~ Gamma(K-1, 1)) falls short of 2^(2R)-1 iff
// a < Q and alpha < X = (Q - a)(1 + phi).  Expanding the Gamma CDF as a
// Poisson tail gives
//
//   Pr{outage | K, phi} = sum_{m >= K-1} c_m = (1 - e^-Q) - sum_{m < K-1} c_m,
//   c_m = (1/m!) int_0^Q X^m e^-X e^-a da
//       = e^-Q (1 + phi)^m / phi^(m+1) * L(m+1, Q phi) / m!.
//
// The head form is used when it does not cancel, the tail form otherwise.

double combined_term(int m, double q, double phi) {
  const double s = q * phi;
  if (s < m + 1.0) {
    // Series branch: c_m = Q e^-y y^m / (m+1)! * sum_i s^i (m+1)! / (m+1+i)!,
    // y = Q (1 + phi).  Finite at phi = 0, where it equals e^-Q Q^(m+1)/(m+1)!.
    const double y = q + s;
    double term = 1.0;
    double sum = 1.0;
    for (int i = 1; i < 10000; ++i) {
      term *= s / (m + 1.0 + i);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::exp(std::log(q) - y + m * std::log(y) - std::lgamma(m + 2.0)) * sum;
  }
  return std::exp(-q + m * std::log1p(phi) - (m + 1.0) * std::log(phi)) * regularized_lower_gamma(m + 1, s);
}

// Pr{outage | K, phi} for K = 2..relays (index K), direct-link case.
std::vector<double> combined_outage_given_k(int relays, double q, double phi) {
  std::vector<double> out(static_cast<std::size_t>(std::max(relays, 1)) + 1, 0.0);
  if (relays < 2 || q == 0.0) return out;

  const double total = -std::expm1(-q);  // Pr{a < Q}
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(relays) + 64);
  for (int m = 0; m <= relays - 2; ++m) terms.push_back(combined_term(m, q, phi));

  double head = 0.0;
  int first_tail = -1;
  for (int k = 2; k <= relays; ++k) {
    head += terms[k - 2];
    if (head <= 0.5 * total) {
      out[k] = total - head;
    } else {
      first_tail = k;
      break;
    }
  }
  if (first_tail < 0) return out;

  const double y = q * (1.0 + phi);
  double tail_sum = 0.0;
  for (int m = first_tail - 1; m < static_cast<int>(terms.size()); ++m) tail_sum += terms[m];
  for (int m = static_cast<int>(terms.size()); m < 200000; ++m) {
    const double c = combined_term(m, q, phi);
    terms.push_back(c);
    tail_sum += c;
    if (m > y + 1.0 && c < 1e-18 * tail_sum) break;
  }
  // Suffix sums from the small end for accuracy.
  double suffix = 0.0;
  std::vector<double> suffix_at(terms.size() + 1, 0.0);
  for (int m = static_cast<int>(terms.size()) - 1; m >= 0; --m) {
    suffix += terms[m];
    suffix_at[m] = suffix;
  }
  for (int k = first_tail; k <= relays; ++k) out[k] = std::min(suffix_at[k - 1], total);
  return out;
}

double case1_relay_outage(const std::vector<double>& pmf, int relays, double q, double phi) {
  // An unreachable broadcast rate leaves no decoders (pmf[k >= 2] = 0).
  if (relays < 2 || std::isinf(q)) return 0.0;
  const auto given_k = combined_outage_given_k(relays, q, phi);
  double nu1 = 0.0;
  for (int k = 2; k <= relays; ++k) nu1 += pmf[k] * given_k[k];
  return nu1;
}

// ---- case 2 ---------------------------------------------------------------
//
// Pr{alpha < X_zeta} with alpha ~ Gamma(n, 1), X_zeta = Q (1 + phi), averaged
// over phi ~ Exp(mean gamma_s).  Writing the Gamma CDF as a Poisson tail,
//
//   E[Pr] = 1 - sum_{m < n} c_m = sum_{m >= n} c_m,
//   c_m = (1/m!) E[X^m e^-X]
//       = e^(1/gs) / (Q gs (1 + 1/(Q gs))^(m+1)) * U(m+1, Q + 1/gs) / m!
//       = e^-Q / (gs Q + 1) * rho^m * sum_{i<=m} sigma^i / i!,
//   rho = Q / (Q + 1/gs), sigma = Q + 1/gs.

double averaged_relay_outage(int n, double q, double gamma_s) {
  if (q == 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;
  const double sigma = q + 1.0 / gamma_s;
  const double rho = q / sigma;
  const double prefactor = std::exp(-q) / (gamma_s * q + 1.0);

  double rho_pow = 1.0;
  double poisson_term = 1.0;  // sigma^m / m!
  double poisson_sum = 1.0;   // sum_{i<=m} sigma^i / i!
  double head = 0.0;
  int m = 0;
  for (; m < n; ++m) {
    head += prefactor * rho_pow * poisson_sum;
    rho_pow *= rho;
    poisson_term *= sigma / (m + 1.0);
    poisson_sum += poisson_term;
  }
  if (head <= 0.5) return 1.0 - head;

  double tail = 0.0;
  for (; m < 10000000; ++m) {
    const double c = prefactor * rho_pow * poisson_sum;
    tail += c;
    if (c < 1e-18 * tail) break;
    rho_pow *= rho;
    poisson_term *= sigma / (m + 1.0);
    poisson_sum += poisson_term;
  }
  return tail;
}

}  // namespace

LinkThresholds link_thresholds(const SystemConfig& cfg) {
  LinkThresholds th;
  if (cfg.link == LinkCase::DirectLink) {
    th.broadcast_rate = 2.0 * cfg.rate;
    th.forward_rate = 2.0 * cfg.rate;
  } else {
    th.broadcast_rate = cfg.rate / cfg.zeta;
    th.forward_rate = cfg.rate / (1.0 - cfg.zeta);
  }
  th.q_broadcast = snr_threshold(th.broadcast_rate) / cfg.gamma_p;
  th.q_forward = snr_threshold(th.forward_rate) / cfg.gamma_p;
  th.decode_prob = std::exp(-th.q_broadcast);
  th.decode_fail = -std::expm1(-th.q_broadcast);
  return th;
}

double interference_moment(int n, double gamma_s) {
  // (1/gs) int_0^inf (1+phi)^n e^(-phi/gs) dphi = gs^n e^(1/gs) U(n+1, 1/gs)
  return std::pow(gamma_s, n) * std::exp(1.0 / gamma_s) * upper_incomplete_gamma(n + 1, 1.0 / gamma_s);
}

OutageBreakdown case1_outage_given_phi(const SystemConfig& cfg, double phi) {
  require_case(cfg, LinkCase::DirectLink, "case1_outage_given_phi");
  validate(cfg);
  const int relays = cfg.num_relays();
  const auto th = link_thresholds(cfg);
  const auto pmf = decoding_pmf(relays, th);
  const double nu1 = case1_relay_outage(pmf, relays, th.q_broadcast, std::max(phi, 0.0));
  const double nu2 = (pmf[0] + (relays >= 1 ? pmf[1] : 0.0)) * th.decode_fail;
  return make_breakdown(nu1, nu2);
}

OutageBreakdown case1_outage(const SystemConfig& cfg) {
  require_case(cfg, LinkCase::DirectLink, "case1_outage");
  validate(cfg);
  const int relays = cfg.num_relays();
  const auto th = link_thresholds(cfg);
  const auto pmf = decoding_pmf(relays, th);
  const double nu2 = (pmf[0] + (relays >= 1 ? pmf[1] : 0.0)) * th.decode_fail;
  double nu1 = 0.0;
  if (relays >= 2 && th.q_broadcast > 0.0) {
    nu1 = average_over_interference(
        [&](double phi) { return case1_relay_outage(pmf, relays, th.q_broadcast, phi); }, cfg.gamma_s);
  }
  return make_breakdown(nu1, nu2);
}

double case1_outage_highsnr(const SystemConfig& cfg) {
  require_case(cfg, LinkCase::DirectLink, "case1_outage_highsnr");
  validate(cfg);
  const int relays = cfg.num_relays();
  const double q = link_thresholds(cfg).q_broadcast;
  double bracket = relays;  // K = 1 term of the second event
  for (int k = 2; k <= relays; ++k) {
    bracket += binomial(relays, k) * interference_moment(k - 1, cfg.gamma_s) / std::tgamma(k + 1.0);
  }
  return bracket * std::pow(q, relays);
}

OutageBreakdown case2_outage_given_phi(const SystemConfig& cfg, double phi) {
  require_case(cfg, LinkCase::NoDirectLink, "case2_outage_given_phi");
  validate(cfg);
  const int relays = cfg.num_relays();
  const auto th = link_thresholds(cfg);
  const auto pmf = decoding_pmf(relays, th);
  const double x = th.q_forward * (1.0 + std::max(phi, 0.0));
  double nu1 = 0.0;
  for (int k = 2; k <= relays; ++k) nu1 += pmf[k] * (x > 0.0 ? regularized_lower_gamma(k - 1, x) : 0.0);
  const double nu2 = pmf[0] + (relays >= 1 ? pmf[1] : 0.0);
  return make_breakdown(nu1, nu2);
}

OutageBreakdown case2_outage(const SystemConfig& cfg) {
  require_case(cfg, LinkCase::NoDirectLink, "case2_outage");
  validate(cfg);
  const int relays = cfg.num_relays();
  const auto th = link_thresholds(cfg);
  const auto pmf = decoding_pmf(relays, th);
  double nu1 = 0.0;
  for (int k = 2; k <= relays; ++k) nu1 += pmf[k] * averaged_relay_outage(k - 1, th.q_forward, cfg.gamma_s);
  const double nu2 = pmf[0] + (relays >= 1 ? pmf[1] : 0.0);
  return make_breakdown(nu1, nu2);
}

double case2_outage_highsnr(const SystemConfig& cfg) {
  require_case(cfg, LinkCase::NoDirectLink, "case2_outage_highsnr");
  validate(cfg);
  const int relays = cfg.num_relays();
  const auto th = link_thresholds(cfg);
  const double a = th.q_broadcast;
  const double b = th.q_forward;
  double value = relays * std::pow(a, relays - 1);  // K = 1: one decoder
  for (int k = 2; k <= relays; ++k) {
    value += binomial(relays, k) * std::pow(a, relays - k) * std::pow(b, k - 1) *
             interference_moment(k - 1, cfg.gamma_s) / std::tgamma(static_cast<double>(k));
  }
  return value;
}

DominantOutageTerm case2_outage_dominant(const SystemConfig& cfg) {
  require_case(cfg, LinkCase::NoDirectLink, "case2_outage_dominant");
  validate(cfg);
  const int order = cfg.num_users - 2;
  DominantOutageTerm out;
  out.relay_phase_limited = cfg.zeta >= 0.5;
  if (out.relay_phase_limited) {
    out.base = std::exp2(cfg.rate / (1.0 - cfg.zeta));
    out.bracket = interference_moment(order, cfg.gamma_s) / std::tgamma(order + 1.0) + cfg.num_relays();
  } else {
    out.base = std::exp2(cfg.rate / cfg.zeta);
    out.bracket = cfg.num_relays();
  }
  out.value = out.bracket * std::pow(out.base / cfg.gamma_p, order);
  return out;
}

double primary_outage(const SystemConfig& cfg) {
  return cfg.link == LinkCase::DirectLink ? case1_outage(cfg).nu : case2_outage(cfg).nu;
}

double primary_outage_highsnr(const SystemConfig& cfg) {
  return cfg.link == LinkCase::DirectLink ? case1_outage_highsnr(cfg) : case2_outage_highsnr(cfg);
}

}  // namespace ccr
