// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ccr {

/// Connectivity of the primary source -> primary destination link.
enum class LinkCase {
  DirectLink,    ///< direct link exists (may be in outage); half/half slot split
  NoDirectLink,  ///< direct link always in outage; zeta / (1 - zeta) split
};

std::string_view to_string(LinkCase c);
LinkCase parse_link_case(std::string_view text);

/// Scenario parameters shared by every module.
///
/// Users are indexed 0..M-1.  SNRs are linear (not dB).  `rate` is the base
/// spectral efficiency in bits/s/Hz; each phase's actual transmission rate is
/// derived from it and the slot split.
struct SystemConfig {
  int num_users = 4;            ///< M, number of secondary users (>= 2)
  double gamma_p = 50.0;        ///< P / N0
  double gamma_s = 30.0;        ///< Ps / N0
  double rate = 0.5;            ///< base rate R
  LinkCase link = LinkCase::DirectLink;
  double zeta = 0.5;            ///< primary share of the slot, NoDirectLink only
  double lambda_p = 0.0;        ///< primary throughput target
  std::vector<double> lambda_s; ///< per-user secondary targets, size M

  int num_relays() const { return num_users - 1; }
};

/// Throws ConfigError when an invariant is violated.  An empty `lambda_s` is
/// accepted and means "all zero".
void validate(const SystemConfig& cfg);

/// Returns `cfg.lambda_s`, or M zeros when it was left empty.
std::vector<double> secondary_targets(const SystemConfig& cfg);

}  // namespace ccr
