// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/experiment.hpp"
#include "doctest.h"

using namespace ccr;

namespace {

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

std::string error_of(const std::string& text) {
  try {
    parse_spec(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("spec parsing") {
  const auto spec = parse_spec(R"(
# a comment
experiment = validate
M = 5          # trailing comment
gamma_p = 1e2
case = nodirect
zeta = 0.4
lambda_s = 0, 0.1, 0.2, 0.1, 0.15
trials = 2e5
seed = 18446744073709551615
sweep = gamma:10:1000:3:log
k = 2
)");
  CHECK(spec.kind == ExperimentKind::Validate);
  CHECK(spec.cfg.num_users == 5);
  CHECK(spec.cfg.gamma_p == 100.0);
  CHECK(spec.cfg.link == LinkCase::NoDirectLink);
  CHECK(spec.cfg.lambda_s == std::vector<double>{0, 0.1, 0.2, 0.1, 0.15});
  CHECK(spec.trials == 200000);
  CHECK(spec.seed == 18446744073709551615ull);
  CHECK(spec.user == 2);
  REQUIRE(spec.sweep);
  CHECK(spec.sweep->param == "gamma_p");
  CHECK(spec.sweep->values() == std::vector<double>{10.0, 100.0, 1000.0});
}

TEST_CASE("diagnostics name the line and field") {
  CHECK(error_of("M = 4\ngamma_p = fast\n").find("t.cfg:2:") == 0);
  CHECK(error_of("M = 4\ngamma_p = fast\n").find("gamma_p") != std::string::npos);
  CHECK(error_of("bogus = 1").find("unknown field 'bogus'") != std::string::npos);
  CHECK(error_of("\n\nM 4").find("t.cfg:3: expected") == 0);
  CHECK(error_of("trials = 1.5").find("trials") != std::string::npos);
  CHECK(error_of("sweep = R:0:1").find("sweep") != std::string::npos);
  CHECK(error_of("sweep = nope:0:1:3").find("sweep") != std::string::npos);
  CHECK(error_of("experiment = fig9").find("experiment") != std::string::npos);
  CHECK(error_of("case = 3").find("case") != std::string::npos);
  CHECK(error_of("trials = 0").find("trials") != std::string::npos);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.44999999999999996}) {
    const auto s = format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("stamp records the config but not the worker count") {
  ExperimentSpec a;
  a.workers = 1;
  ExperimentSpec b = a;
  b.workers = 16;
  b.output_path = "/tmp/x.csv";
  CHECK(spec_stamp(a) == spec_stamp(b));
  CHECK(spec_stamp(a).rfind("# ccr experiment=outage-curve", 0) == 0);
  b.seed = 2;
  CHECK(spec_stamp(a) != spec_stamp(b));
}

TEST_CASE("outage curve") {
  auto spec = parse_spec("experiment = outage-curve\nsweep = gamma:1e2:1e4:3:log\n");
  const auto res = run_experiment(spec);
  const auto r = rows(res.csv);
  REQUIRE(r.size() == 4);
  CHECK(r[0] == std::vector<std::string>{"gamma_p", "nu_closed", "nu_highsnr"});
  CHECK(r[1][0] == "100");
  CHECK(std::stod(r[3][1]) < std::stod(r[1][1]));
}

TEST_CASE("validate on a single point") {
  auto spec = parse_spec("experiment = validate\ngrid = single\ntrials = 200000\nM = 3\ngamma_p = 10\n");
  const auto res = run_experiment(spec);
  CHECK(res.exit_code == 0);
  const auto r = rows(res.csv);
  REQUIRE(r.size() == 2);
  CHECK(r[0].back() == "z_score");
  CHECK(std::abs(std::stod(r[1].back())) <= 4.0);
}

TEST_CASE("dmt rows") {
  auto spec = parse_spec("experiment = dmt\nM = 4\nnum_points = 5\n");
  const auto r = rows(run_experiment(spec).csv);
  REQUIRE(r.size() == 6);
  CHECK(r[1][0] == "0");
  CHECK(r[1][1] == "3");
  CHECK(std::abs(std::stod(r[1][2]) - 3.0) < 0.3);
  CHECK(r[5][1] == "0");
  CHECK(r[5][2].empty());
}

TEST_CASE("qos sweep") {
  auto spec = parse_spec("experiment = qos-sweep\nM = 3\nlambda_s = 0, 0.3, 0.3\nsweep = R:0:2:5\n");
  const auto r = rows(run_experiment(spec).csv);
  REQUIRE(r.size() == 6);
  CHECK(r[0] == std::vector<std::string>{"R", "lambda_k_max", "feasible", "omega_1", "omega_2", "omega_3", "zeta"});
  CHECK(std::stod(r[1][1]) == doctest::Approx(0.4));
  CHECK(r[1][2] == "1");

  spec.user = 9;
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("figure presets") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::Fig1;
  const auto r = rows(run_experiment(spec).csv);
  REQUIRE(r.size() == 1 + 3 * 61);
  CHECK(r[0][3] == "lambda_1_max");
  // first row of each M series is R = 0
  CHECK(std::stod(r[1][3]) == doctest::Approx(0.60).epsilon(1e-12));
  CHECK(std::stod(r[62][3]) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(std::stod(r[123][3]) == doctest::Approx(0.35).epsilon(1e-12));

  spec.kind = ExperimentKind::Fig2;
  spec.grid_size = 99;
  spec.sweep = SweepAxis::parse("R:0:1:3");
  const auto r2 = rows(run_experiment(spec).csv);
  REQUIRE(r2.size() == 1 + 3 * 3 + 3);
  CHECK(r2.back()[0] == "zeta_half");
  CHECK(r2.back().back() == "0.5");

  spec.sweep = SweepAxis::parse("gamma:1:10:2");
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("worker count leaves CSV bytes unchanged") {
  auto spec = parse_spec("experiment = validate\ngrid = single\ntrials = 70000\ncase = nodirect\nM = 6\n");
  spec.workers = 1;
  const auto ref = run_experiment(spec).csv;
  for (int w : {4, 16}) {
    spec.workers = w;
    CHECK(run_experiment(spec).csv == ref);
  }
}
