// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ccr/beamform.hpp"
#include "ccr/channel.hpp"
#include "ccr/config.hpp"
#include "ccr/rng.hpp"

namespace ccr {

/// Empirical probability with its binomial standard error.
struct OutageEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;  ///< sqrt(p_hat (1 - p_hat) / trials)
  std::int64_t trials = 0;

  static OutageEstimate from_counts(std::int64_t events, std::int64_t trials);
};

struct SlotOutcome {
  int decoders = 0;  ///< K, size of the decoding set
  bool primary_ok = false;
  bool secondary_ok = false;
};

/// Scratch buffers for the per-slot kernel, one per worker.
struct SlotWorkspace {
  ChannelRealization channel;
  std::vector<cplx> h_pd;
  std::vector<cplx> h_sd;
  BeamformerResult beam;
};

/// One DirectLink slot: half-slot broadcast at 2R, then zero-forced relaying
/// (K >= 2) concurrently with the scheduled secondary, MRC at the primary
/// destination.
SlotOutcome simulate_slot_case1(const SystemConfig& cfg, RandomStream& stream);
/// One NoDirectLink slot: broadcast at R/zeta, relaying at R/(1-zeta).
SlotOutcome simulate_slot_case2(const SystemConfig& cfg, RandomStream& stream);
/// Dispatches on cfg.link, reusing `ws`.
SlotOutcome simulate_slot(const SystemConfig& cfg, RandomStream& stream, SlotWorkspace& ws);

struct OutageReport {
  OutageEstimate primary;            ///< primary outage
  OutageEstimate secondary;          ///< scheduled secondary's own-link outage
  std::vector<std::int64_t> decoders_histogram;  ///< counts of K = 0..M-1
};

/// Trials are cut into fixed blocks of kBlockTrials; block b draws from
/// RandomStream(seed, b).  Counts are reduced in block order, so the result
/// is identical for any worker count.
inline constexpr std::int64_t kBlockTrials = 8192;

/// OpenMP-parallel Monte Carlo over `trials` slots.
OutageReport estimate_outage(const SystemConfig& cfg, std::int64_t trials, std::uint64_t seed, int workers);
/// Single-threaded reference kernel; bit-identical to estimate_outage.
OutageReport estimate_outage_serial(const SystemConfig& cfg, std::int64_t trials, std::uint64_t seed);

/// Throughputs under probabilistic TDMA: each slot schedules user j with
/// probability omega[j].
struct ScheduleReport {
  std::vector<OutageEstimate> secondary;  ///< per-user mu_j = Pr{j scheduled and decoded}
  OutageEstimate primary;                 ///< primary success rate, 1 - outage
  std::vector<std::int64_t> scheduled;    ///< slots given to each user
};

ScheduleReport simulate_schedule(const SystemConfig& cfg, std::span<const double> omega, std::int64_t trials,
                                 std::uint64_t seed, int workers);

}  // namespace ccr
