// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance suite.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.  All randomness is seeded with
// kSeed; workers only change wall time, never the numbers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ccr/analytic.hpp"
#include "ccr/beamform.hpp"
#include "ccr/dmt.hpp"
#include "ccr/error.hpp"
#include "ccr/experiment.hpp"
#include "ccr/qos.hpp"
#include "ccr/quadrature.hpp"
#include "ccr/rng.hpp"
#include "ccr/simulate.hpp"
#include "test_support.hpp"

using namespace ccr;

namespace {

constexpr std::uint64_t kSeed = 1;

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s -- %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SystemConfig make(LinkCase link, int m, double gamma, double rate, double zeta = 0.5, double gamma_s = 30.0) {
  SystemConfig cfg;
  cfg.link = link;
  cfg.num_users = m;
  cfg.gamma_p = gamma;
  cfg.gamma_s = gamma_s;
  cfg.rate = rate;
  cfg.zeta = zeta;
  return cfg;
}

// Same enumeration order and per-point seeds as `ccr --experiment validate`.
void oracle_grid(int id, LinkCase link, std::size_t index_offset) {
  const std::vector<double> zetas = link == LinkCase::DirectLink ? std::vector<double>{0.5}
                                                                 : std::vector<double>{0.4, 0.5, 0.6};
  constexpr std::int64_t n = 1'000'000;
  int passed = 0, total = 0;
  double worst = 0.0;
  std::size_t idx = index_offset;
  for (int m : {3, 4, 6})
    for (double g : {10.0, 50.0, 200.0})
      for (double r : {0.25, 0.5, 1.0})
        for (double z : zetas) {
          const auto cfg = make(link, m, g, r, z);
          const double nu = primary_outage(cfg);
          const auto est = estimate_outage(cfg, n, mix_seed(kSeed + idx++), workers()).primary;
          const double se = test::binomial_stderr(nu, static_cast<double>(n));
          const double dev = std::abs(est.p_hat - nu);
          const bool ok = dev <= 3.0 * se;
          worst = std::max(worst, se > 0 ? dev / se : (dev > 0 ? INFINITY : 0.0));
          passed += ok;
          ++total;
          if (!ok)
            std::printf("    miss: M=%d gamma=%g R=%g zeta=%g nu=%.6e p_hat=%.6e se=%.3e\n", m, g, r, z, nu,
                        est.p_hat, se);
        }
  report(id, passed == total,
         std::string("closed form vs Monte Carlo, ") + (link == LinkCase::DirectLink ? "direct link" : "no direct link"),
         std::to_string(passed) + "/" + std::to_string(total) + " points within 3 stderr at N=1e6, max |dev|/stderr " +
             fmt("%.2f", worst));
}

void criterion3() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> users(3, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0, worst_nu1 = 0.0;
  for (int i = 0; i < 10; ++i) {
    auto cfg = make(LinkCase::NoDirectLink, users(rng), std::pow(10.0, 0.7 + 2.3 * unit(rng)), 0.1 + 1.4 * unit(rng),
                    0.2 + 0.6 * unit(rng), std::pow(10.0, 2.0 * unit(rng)));
    const double closed = case2_outage(cfg).nu;
    const auto closed_nu1 = case2_outage(cfg).nu1;
    const auto nu2 = case2_outage_given_phi(cfg, 0.0).nu2;
    const double nu1 =
        average_over_interference([&](double phi) { return case2_outage_given_phi(cfg, phi).nu1; }, cfg.gamma_s);
    const double quad = std::min(1.0, nu1 + nu2);
    worst = std::max(worst, std::abs(quad - closed) / closed);
    if (closed_nu1 > 0.0) worst_nu1 = std::max(worst_nu1, std::abs(nu1 - closed_nu1) / closed_nu1);
  }
  report(3, worst <= 1e-6, "closed-form phi average equals quadrature (no direct link)",
         "10 random points, max relative error " + fmt("%.2e", worst) + " (relayed term alone " +
             fmt("%.2e", worst_nu1) + ")");
}

void criterion4() {
  double worst = 0.0;
  std::string detail;
  for (int k : {2, 3, 5, 8}) {
    RandomStream stream(kSeed, 1000 + static_cast<std::uint64_t>(k));
    std::vector<cplx> h_pd(k), h_sd(k);
    std::vector<double> alphas(100'000);
    for (auto& a : alphas) {
      for (int i = 0; i < k; ++i) {
        h_pd[i] = stream.complex_normal();
        h_sd[i] = stream.complex_normal();
      }
      a = optimal_weights(h_pd, h_sd).alpha;
    }
    const double d = test::ks_distance_gamma(alphas, k - 1);
    worst = std::max(worst, d);
    detail += "K=" + std::to_string(k) + ":" + fmt("%.4f", d) + " ";
  }
  report(4, worst < 0.01, "projected gain is Gamma(K-1, 1)", "KS distances " + detail + "(limit 0.01)");
}

void criterion5() {
  RandomStream stream(kSeed, 2000);
  double max_leak = 0.0, max_norm_err = 0.0;
  std::vector<cplx> h_pd, h_sd;
  for (int t = 0; t < 100'000; ++t) {
    const int k = 2 + t % 7;
    h_pd.resize(k);
    h_sd.resize(k);
    for (int i = 0; i < k; ++i) {
      h_pd[i] = stream.complex_normal();
      h_sd[i] = stream.complex_normal();
    }
    const auto res = optimal_weights(h_pd, h_sd);
    cplx leak{};
    double n2 = 0.0;
    for (int i = 0; i < k; ++i) {
      leak += std::conj(res.g[i]) * h_sd[i];
      n2 += std::norm(res.g[i]);
    }
    max_leak = std::max({max_leak, std::norm(leak), res.leakage});
    max_norm_err = std::max(max_norm_err, std::abs(std::sqrt(n2) - 1.0));
  }
  // Random search: one K=3 instance at 1e6 samples plus 200 mixed-K instances at 1e4.
  double max_excess = -INFINITY;
  for (int t = 0; t <= 200; ++t) {
    const int k = t == 0 ? 3 : 2 + t % 5;
    h_pd.resize(k);
    h_sd.resize(k);
    for (int i = 0; i < k; ++i) {
      h_pd[i] = stream.complex_normal();
      h_sd[i] = stream.complex_normal();
    }
    const double alpha = optimal_weights(h_pd, h_sd).alpha;
    const double best = test::random_search_gain(h_pd, h_sd, t == 0 ? 1'000'000 : 10'000, kSeed + t);
    max_excess = std::max(max_excess, best / alpha - 1.0);
  }
  const bool ok = max_leak < 1e-20 && max_norm_err < 1e-12 && max_excess <= 1e-3;
  report(5, ok, "zero-forcing nulls the secondary destination",
         "1e5 instances: max leakage " + fmt("%.2e", max_leak) + ", max | ||g||-1 | " + fmt("%.2e", max_norm_err) +
             ", random search exceeds alpha by at most " + fmt("%.2e", max_excess));
}

void criterion6() {
  const std::vector<double> grid{1e2, 1e3, 1e4, 1e5};
  bool ok = true;
  std::string detail;
  for (int m : {3, 4, 6}) {
    const double d1 = empirical_diversity(make(LinkCase::DirectLink, m, 1.0, 0.5), 0.0, grid, OutageSource::ClosedForm);
    const double d2 =
        empirical_diversity(make(LinkCase::NoDirectLink, m, 1.0, 0.5, 0.5), 0.0, grid, OutageSource::ClosedForm);
    ok = ok && std::abs(d1 - (m - 1)) <= 0.3 && std::abs(d2 - (m - 2)) <= 0.3;
    detail += "M=" + std::to_string(m) + ": " + fmt("%.3f", d1) + "/" + fmt("%.3f", d2) + " ";
  }
  report(6, ok, "diversity order from closed-form slopes",
         "direct/no-direct slopes " + detail + "(targets M-1 / M-2, +-0.3)");
}

void criterion7() {
  std::vector<SystemConfig> points;
  for (int m : {3, 4, 6}) points.push_back(make(LinkCase::DirectLink, m, 1.0, 0.5));
  for (int m : {3, 4, 6})
    for (double z : {0.4, 0.5, 0.6}) points.push_back(make(LinkCase::NoDirectLink, m, 1.0, 0.3, z));
  bool ok = true;
  double worst_ratio_gap = 0.0;
  for (auto cfg : points) {
    double prev = INFINITY;
    for (double g : {1e2, 1e3, 1e4}) {
      cfg.gamma_p = g;
      const double ratio = primary_outage(cfg) / primary_outage_highsnr(cfg);
      const double gap = std::abs(ratio - 1.0);
      if (!(gap < prev)) ok = false;
      prev = gap;
      if (g == 1e4) {
        ok = ok && ratio > 0.5 && ratio < 2.0;
        worst_ratio_gap = std::max(worst_ratio_gap, gap);
      }
    }
  }
  report(7, ok, "high-SNR expansion", std::to_string(points.size()) +
                                          " configs, both cases: |ratio-1| shrinks over gamma=1e2,1e3,1e4; max at 1e4 " +
                                          fmt("%.2e", worst_ratio_gap));
}

void criterion8() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::Fig1;
  const auto csv = run_experiment(spec).csv;
  // series,M,R,lambda_1_max,...
  std::vector<std::vector<double>> lam(7);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string series, m, r, l;
    std::getline(ls, series, ',');
    std::getline(ls, m, ',');
    std::getline(ls, r, ',');
    std::getline(ls, l, ',');
    lam[std::stoi(m)].push_back(std::stod(l));
  }
  const double endpoint = lam[5].front();
  bool ok = std::abs(endpoint - 0.45) < 1e-12;
  ok = ok && std::abs(lam[4].front() - 0.60) < 1e-12 && std::abs(lam[6].front() - 0.35) < 1e-12;
  for (int m : {4, 5, 6})
    for (std::size_t i = 1; i < lam[m].size(); ++i) ok = ok && lam[m][i] <= lam[m][i - 1];
  int strict = 0;
  for (std::size_t i = 0; i < lam[4].size(); ++i)
    for (int m : {4, 5}) {
      // Decreasing in M: strictly while the smaller-M value is positive; both clamp to 0 once f is exhausted.
      if (lam[m][i] > 0.0) {
        ok = ok && lam[m][i] > lam[m + 1][i];
        ++strict;
      } else {
        ok = ok && lam[m + 1][i] == 0.0;
      }
    }
  report(8, ok, "QoS endpoint and shape (direct-link preset)",
         "lambda_1_max(R=0) = " + fmt("%.12g", endpoint) + " at M=5 (M=4: " + fmt("%.12g", lam[4].front()) +
             ", M=6: " + fmt("%.12g", lam[6].front()) + "); nonincreasing in R; decreasing in M at " +
             std::to_string(strict) + " positive pairs");
}

void criterion9() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr std::int64_t n = 200'000;
  int instances = 0, attempts = 0, checks = 0, misses = 0, tight = 0;
  while (instances < 100 && attempts < 10000) {
    ++attempts;
    SystemConfig cfg = make(unit(rng) < 0.5 ? LinkCase::DirectLink : LinkCase::NoDirectLink,
                            3 + static_cast<int>(unit(rng) * 4), std::pow(10.0, 1.0 + 1.5 * unit(rng)),
                            0.1 + 0.9 * unit(rng), 0.3 + 0.4 * unit(rng), 5.0 + 45.0 * unit(rng));
    const int m = cfg.num_users;
    const double nu = primary_outage(cfg);
    const double f = secondary_success_prob(cfg);
    cfg.lambda_p = (1.0 - nu) * unit(rng);
    std::vector<double> w(m);
    for (auto& x : w) x = unit(rng);
    const double scale = f * unit(rng) / std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x *= scale;
    cfg.lambda_s = w;
    const int k = static_cast<int>(unit(rng) * m);
    const auto sol = evaluate_assignment(cfg, k);
    if (!sol.feasible) continue;
    ++instances;
    const auto sim = simulate_schedule(cfg, sol.omega, n, mix_seed(kSeed + 5000 + instances), workers());
    for (int j = 0; j < m; ++j) {
      const auto& mu = sim.secondary[j];
      ++checks;
      tight += j != k;
      if (!(mu.p_hat >= cfg.lambda_s[j] - 3.0 * mu.std_error)) {
        ++misses;
        std::printf("    miss: instance %d user %d lambda=%.6f mu=%.6f se=%.2e (%s)\n", instances, j + 1,
                    cfg.lambda_s[j], mu.p_hat, mu.std_error, j == k ? "designated" : "at equality");
      }
    }
    ++checks;
    if (!(sim.primary.p_hat >= cfg.lambda_p - 3.0 * sim.primary.std_error)) {
      ++misses;
      std::printf("    miss: instance %d primary lambda_p=%.6f rate=%.6f\n", instances, cfg.lambda_p, sim.primary.p_hat);
    }
  }
  report(9, instances == 100 && misses == 0, "scheduled throughput meets every target",
         std::to_string(instances) + " feasible instances, " + std::to_string(checks) + " checks (" +
             std::to_string(tight) + " hold with equality by construction), " + std::to_string(misses) +
             " below target - 3 stderr at N=2e5");
}

void criterion10() {
  const char* specs[] = {
      "experiment = validate\ntrials = 20000\n",
      "experiment = validate\ngrid = single\ncase = nodirect\nM = 6\ntrials = 300000\n",
      "experiment = outage-curve\ncase = nodirect\nzeta = 0.4\n",
      "experiment = qos-sweep\ncase = nodirect\nzeta_mode = search\nlambda_s = 0,0.1,0.1,0.1\nlambda_p = 0.1\n",
      "experiment = dmt\nsource = mc\ngamma_grid = 10,100,1000\nM = 3\nnum_points = 3\n",
      "experiment = fig1\n",
  };
  bool ok = true;
  int runs = 0;
  for (const char* text : specs) {
    auto spec = parse_spec(text, "acceptance");
    std::string ref;
    for (int w : {1, 4, 16}) {
      spec.workers = w;
      const auto csv = run_experiment(spec).csv;
      if (w == 1) ref = csv;
      else ok = ok && csv == ref;
      ++runs;
    }
    ok = ok && run_experiment(spec).csv == ref;
  }
  report(10, ok, "byte-identical CSV across worker counts",
         std::to_string(std::size(specs)) + " experiments x workers {1,4,16} (" + std::to_string(runs) +
             " runs) plus a repeat");
}

}  // namespace

int main() {
  std::printf("acceptance suite: seed %llu, %d hardware threads\n", static_cast<unsigned long long>(kSeed), workers());
  oracle_grid(1, LinkCase::DirectLink, 0);
  oracle_grid(2, LinkCase::NoDirectLink, 27);
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
