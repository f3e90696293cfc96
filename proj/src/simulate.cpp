// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/simulate.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccr/analytic.hpp"

namespace ccr {

OutageEstimate OutageEstimate::from_counts(std::int64_t events, std::int64_t trials) {
  OutageEstimate e;
  e.trials = trials;
  if (trials <= 0) return e;
  e.p_hat = static_cast<double>(events) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

namespace {

// SNR thresholds (2^rate - 1) for one configuration.
struct SlotThresholds {
  double broadcast;
  double forward;
  double secondary;
};

SlotThresholds slot_thresholds(const SystemConfig& cfg) {
  const auto th = link_thresholds(cfg);
  // The scheduled secondary transmits during the relay phase at that phase's rate.
  return {snr_threshold(th.broadcast_rate), snr_threshold(th.forward_rate), snr_threshold(th.forward_rate)};
}

SlotOutcome run_slot(const SystemConfig& cfg, const SlotThresholds& thr, RandomStream& stream, SlotWorkspace& ws) {
  draw_realization(cfg, stream, ws.channel);
  const auto& ch = ws.channel;

  ws.h_pd.clear();
  ws.h_sd.clear();
  for (std::size_t k = 0; k < ch.h_p_relay.size(); ++k) {
    if (cfg.gamma_p * std::norm(ch.h_p_relay[k]) >= thr.broadcast) {
      ws.h_pd.push_back(ch.h_relay_pd[k]);
      ws.h_sd.push_back(ch.h_relay_sd[k]);
    }
  }

  SlotOutcome out;
  out.decoders = static_cast<int>(ws.h_pd.size());
  const double direct_snr = cfg.gamma_p * std::norm(ch.h_p_pd);  // zero without a direct link
  double relay_leakage = 0.0;

  if (out.decoders >= 2) {
    optimal_weights_into(ws.h_pd, ws.h_sd, ws.beam);
    relay_leakage = ws.beam.leakage;
    const double relay_sinr = received_sinr_pd(ws.beam, cfg, std::norm(ch.h_v_pd));
    out.primary_ok = relay_sinr + direct_snr >= thr.forward;
  } else {
    // Relays idle; only the first-phase direct copy exists.
    out.primary_ok = cfg.link == LinkCase::DirectLink && direct_snr >= thr.forward;
  }

  // Residual relay power at the secondary destination enters as interference.
  const double secondary_sinr = cfg.gamma_s * std::norm(ch.h_v_sd) / (1.0 + cfg.gamma_p * relay_leakage);
  out.secondary_ok = secondary_sinr >= thr.secondary;
  return out;
}

struct Tally {
  std::int64_t primary_fail = 0;
  std::int64_t secondary_fail = 0;
  std::vector<std::int64_t> decoders;

  void add(const Tally& other) {
    primary_fail += other.primary_fail;
    secondary_fail += other.secondary_fail;
    if (decoders.size() < other.decoders.size()) decoders.resize(other.decoders.size(), 0);
    for (std::size_t i = 0; i < other.decoders.size(); ++i) decoders[i] += other.decoders[i];
  }
};

Tally run_block(const SystemConfig& cfg, const SlotThresholds& thr, std::uint64_t seed, std::int64_t block,
                std::int64_t count, SlotWorkspace& ws) {
  Tally t;
  t.decoders.assign(static_cast<std::size_t>(cfg.num_users), 0);
  RandomStream stream(seed, static_cast<std::uint64_t>(block));
  for (std::int64_t i = 0; i < count; ++i) {
    const auto slot = run_slot(cfg, thr, stream, ws);
    t.primary_fail += slot.primary_ok ? 0 : 1;
    t.secondary_fail += slot.secondary_ok ? 0 : 1;
    ++t.decoders[slot.decoders];
  }
  return t;
}

OutageReport to_report(const Tally& t, std::int64_t trials) {
  return {OutageEstimate::from_counts(t.primary_fail, trials), OutageEstimate::from_counts(t.secondary_fail, trials),
          t.decoders};
}

void check_trials(std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

std::int64_t block_count(std::int64_t trials) { return (trials + kBlockTrials - 1) / kBlockTrials; }

std::int64_t block_size(std::int64_t trials, std::int64_t b) {
  return std::min(kBlockTrials, trials - b * kBlockTrials);
}

}  // namespace

SlotOutcome simulate_slot(const SystemConfig& cfg, RandomStream& stream, SlotWorkspace& ws) {
  return run_slot(cfg, slot_thresholds(cfg), stream, ws);
}

SlotOutcome simulate_slot_case1(const SystemConfig& cfg, RandomStream& stream) {
  if (cfg.link != LinkCase::DirectLink) throw std::invalid_argument("simulate_slot_case1 requires case=direct");
  SlotWorkspace ws;
  return simulate_slot(cfg, stream, ws);
}

SlotOutcome simulate_slot_case2(const SystemConfig& cfg, RandomStream& stream) {
  if (cfg.link != LinkCase::NoDirectLink) throw std::invalid_argument("simulate_slot_case2 requires case=nodirect");
  SlotWorkspace ws;
  return simulate_slot(cfg, stream, ws);
}

OutageReport estimate_outage_serial(const SystemConfig& cfg, std::int64_t trials, std::uint64_t seed) {
  validate(cfg);
  check_trials(trials);
  const auto thr = slot_thresholds(cfg);
  SlotWorkspace ws;
  Tally total;
  total.decoders.assign(static_cast<std::size_t>(cfg.num_users), 0);
  for (std::int64_t b = 0; b < block_count(trials); ++b) total.add(run_block(cfg, thr, seed, b, block_size(trials, b), ws));
  return to_report(total, trials);
}

OutageReport estimate_outage(const SystemConfig& cfg, std::int64_t trials, std::uint64_t seed, int workers) {
  validate(cfg);
  check_trials(trials);
  const auto thr = slot_thresholds(cfg);
  const std::int64_t blocks = block_count(trials);
  std::vector<Tally> per_block(static_cast<std::size_t>(blocks));

#pragma omp parallel num_threads(std::max(workers, 1))
  {
    SlotWorkspace ws;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < blocks; ++b) per_block[b] = run_block(cfg, thr, seed, b, block_size(trials, b), ws);
  }

  Tally total;
  total.decoders.assign(static_cast<std::size_t>(cfg.num_users), 0);
  for (const auto& t : per_block) total.add(t);
  return to_report(total, trials);
}

ScheduleReport simulate_schedule(const SystemConfig& cfg, std::span<const double> omega, std::int64_t trials,
                                 std::uint64_t seed, int workers) {
  validate(cfg);
  check_trials(trials);
  const auto users = static_cast<std::size_t>(cfg.num_users);
  if (omega.size() != users) throw std::invalid_argument("omega must have M entries");

  std::vector<double> cumulative(users);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < users; ++j) {
    if (!(omega[j] >= 0.0)) throw std::invalid_argument("omega entries must be nonnegative");
    acc += omega[j];
    cumulative[j] = acc;
    if (omega[j] > 0.0) last_positive = j;
  }
  if (!(acc > 0.0)) throw std::invalid_argument("omega must have positive mass");

  const auto thr = slot_thresholds(cfg);
  const std::int64_t blocks = block_count(trials);
  // Per block: [0, M) scheduled counts, [M, 2M) secondary successes, 2M primary successes.
  std::vector<std::vector<std::int64_t>> per_block(static_cast<std::size_t>(blocks));

#pragma omp parallel num_threads(std::max(workers, 1))
  {
    SlotWorkspace ws;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < blocks; ++b) {
      std::vector<std::int64_t> counts(2 * users + 1, 0);
      RandomStream stream(seed, static_cast<std::uint64_t>(b));
      for (std::int64_t i = 0; i < block_size(trials, b); ++i) {
        const double u = stream.uniform() * acc;
        auto v = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        v = std::min(v, last_positive);
        const auto slot = run_slot(cfg, thr, stream, ws);
        ++counts[v];
        counts[users + v] += slot.secondary_ok ? 1 : 0;
        counts[2 * users] += slot.primary_ok ? 1 : 0;
      }
      per_block[b] = std::move(counts);
    }
  }

  std::vector<std::int64_t> totals(2 * users + 1, 0);
  for (const auto& c : per_block)
    for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += c[i];

  ScheduleReport report;
  report.scheduled.assign(totals.begin(), totals.begin() + static_cast<std::ptrdiff_t>(users));
  for (std::size_t j = 0; j < users; ++j) report.secondary.push_back(OutageEstimate::from_counts(totals[users + j], trials));
  report.primary = OutageEstimate::from_counts(totals[2 * users], trials);
  return report;
}

}  // namespace ccr
