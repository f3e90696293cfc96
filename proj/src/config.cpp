// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/config.hpp"

#include <cmath>

#include "ccr/error.hpp"

namespace ccr {

std::string_view to_string(LinkCase c) {
  return c == LinkCase::DirectLink ? "direct" : "nodirect";
}

LinkCase parse_link_case(std::string_view text) {
  if (text == "direct" || text == "1" || text == "DirectLink") return LinkCase::DirectLink;
  if (text == "nodirect" || text == "2" || text == "NoDirectLink") return LinkCase::NoDirectLink;
  throw ConfigError("unknown link case '" + std::string(text) + "' (expected direct|nodirect)");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const SystemConfig& cfg) {
  require(cfg.num_users >= 2, "M must be >= 2");
  require(cfg.gamma_p > 0.0 && !std::isnan(cfg.gamma_p), "gamma_p must be > 0");
  require(cfg.gamma_s > 0.0 && !std::isnan(cfg.gamma_s), "gamma_s must be > 0");
  // R = 0 is admitted as the closed endpoint of rate sweeps.
  require(cfg.rate >= 0.0 && std::isfinite(cfg.rate), "R must be >= 0");
  require(cfg.zeta > 0.0 && cfg.zeta < 1.0, "zeta must lie in (0, 1)");
  require(is_probability(cfg.lambda_p), "lambda_p must lie in [0, 1]");
  require(cfg.lambda_s.empty() || static_cast<int>(cfg.lambda_s.size()) == cfg.num_users,
          "lambda_s must have exactly M entries");
  for (double l : cfg.lambda_s) require(is_probability(l), "lambda_s entries must lie in [0, 1]");
}

std::vector<double> secondary_targets(const SystemConfig& cfg) {
  if (cfg.lambda_s.empty()) return std::vector<double>(static_cast<std::size_t>(cfg.num_users), 0.0);
  return cfg.lambda_s;
}

}  // namespace ccr
