// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccr/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "ccr/analytic.hpp"
#include "ccr/error.hpp"
#include "ccr/qos.hpp"
#include "ccr/rng.hpp"
#include "ccr/simulate.hpp"

namespace ccr {

namespace {

constexpr std::array kKindNames{"outage-curve", "validate", "dmt", "qos-sweep", "fig1", "fig2"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("field '" + std::string(key) + "': invalid value '" + std::string(value) + "' (expected " +
                    std::string(expected) + ")");
}

double to_double(std::string_view key, std::string_view text) {
  double out = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (text.empty() || ec != std::errc{} || ptr != end) bad_value(key, text, "a number");
  return out;
}

std::int64_t to_int(std::string_view key, std::string_view text) {
  // Accepts 1e6-style literals as long as the value is integral.
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 9e15) bad_value(key, text, "an integer");
  return static_cast<std::int64_t>(v);
}

std::uint64_t to_seed(std::string_view key, std::string_view text) {
  std::uint64_t out = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (text.empty() || ec != std::errc{} || ptr != end) bad_value(key, text, "an unsigned integer");
  return out;
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(to_double(key, part));
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_number(xs[i]);
  }
  return out;
}

std::string sweep_text(const SweepAxis& a) {
  return a.param + ":" + format_number(a.min) + ":" + format_number(a.max) + ":" + std::to_string(a.steps) +
         (a.log ? ":log" : "");
}

void set_param(SystemConfig& cfg, std::string_view param, double value) {
  if (param == "gamma_p") cfg.gamma_p = value;
  else if (param == "gamma_s") cfg.gamma_s = value;
  else if (param == "R") cfg.rate = value;
  else if (param == "zeta") cfg.zeta = value;
  else throw ConfigError("field 'sweep': unknown parameter '" + std::string(param) + "'");
}

class CsvWriter {
 public:
  explicit CsvWriter(std::string stamp) { out_ << stamp << '\n'; }

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
  }

  CsvWriter& cell(double x) { return raw(format_number(x)); }
  CsvWriter& cell(std::int64_t x) { return raw(std::to_string(x)); }
  CsvWriter& cell(int x) { return raw(std::to_string(x)); }
  CsvWriter& cell(std::string_view s) { return raw(s); }
  CsvWriter& empty() { return raw(""); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

  std::string str() const { return out_.str(); }

 private:
  CsvWriter& raw(std::string_view s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }

  std::ostringstream out_;
  bool first_ = true;
};

int user_index(const ExperimentSpec& spec) {
  if (spec.user < 1 || spec.user > spec.cfg.num_users)
    throw ConfigError("field 'k': user " + std::to_string(spec.user) + " outside 1.." +
                      std::to_string(spec.cfg.num_users));
  return spec.user - 1;
}

SweepAxis axis_or(const ExperimentSpec& spec, SweepAxis fallback) {
  return spec.sweep ? *spec.sweep : fallback;
}

ExperimentResult run_outage_curve(const ExperimentSpec& spec) {
  validate(spec.cfg);
  const auto axis = axis_or(spec, {"gamma_p", 10.0, 1e5, 17, true});
  CsvWriter csv(spec_stamp(spec));
  csv.header({axis.param, "nu_closed", "nu_highsnr"});
  for (double x : axis.values()) {
    SystemConfig cfg = spec.cfg;
    set_param(cfg, axis.param, x);
    csv.cell(x).cell(primary_outage(cfg)).cell(primary_outage_highsnr(cfg)).end_row();
  }
  return {0, csv.str()};
}

std::vector<SystemConfig> validation_points(const ExperimentSpec& spec) {
  if (spec.grid == ValidationGrid::Single) return {spec.cfg};
  std::vector<SystemConfig> pts;
  SystemConfig base = spec.cfg;
  base.lambda_s.clear();
  for (LinkCase link : {LinkCase::DirectLink, LinkCase::NoDirectLink}) {
    const std::vector<double> zetas =
        link == LinkCase::DirectLink ? std::vector<double>{0.5} : std::vector<double>{0.4, 0.5, 0.6};
    for (int m : {3, 4, 6})
      for (double g : {10.0, 50.0, 200.0})
        for (double r : {0.25, 0.5, 1.0})
          for (double z : zetas) {
            SystemConfig c = base;
            c.link = link;
            c.num_users = m;
            c.gamma_p = g;
            c.rate = r;
            c.zeta = z;
            pts.push_back(c);
          }
  }
  return pts;
}

ExperimentResult run_validate(const ExperimentSpec& spec) {
  validate(spec.cfg);
  if (spec.trials < 1) throw ConfigError("field 'trials': must be >= 1");
  CsvWriter csv(spec_stamp(spec));
  csv.header({"case", "M", "gamma_p", "gamma_s", "R", "zeta", "nu_closed", "p_hat", "stderr", "z_score"});
  int exit_code = 0;
  const auto pts = validation_points(spec);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& c = pts[i];
    const double nu = primary_outage(c);
    const auto est = estimate_outage(c, spec.trials, mix_seed(spec.seed + i), spec.workers).primary;
    // z is standardised under the closed form, so it stays finite when p_hat hits 0 or 1.
    const double sd = std::sqrt(nu * (1.0 - nu) / static_cast<double>(est.trials));
    double z = 0.0;
    if (sd > 0.0) z = (est.p_hat - nu) / sd;
    else if (est.p_hat != nu) z = std::numeric_limits<double>::infinity();
    if (!(std::abs(z) <= 4.0)) exit_code = 1;
    csv.cell(to_string(c.link)).cell(c.num_users).cell(c.gamma_p).cell(c.gamma_s).cell(c.rate);
    if (c.link == LinkCase::NoDirectLink) csv.cell(c.zeta);
    else csv.empty();
    csv.cell(nu).cell(est.p_hat).cell(est.std_error).cell(z).end_row();
  }
  return {exit_code, csv.str()};
}

ExperimentResult run_dmt(const ExperimentSpec& spec) {
  validate(spec.cfg);
  if (spec.num_points < 2) throw ConfigError("field 'num_points': must be >= 2");
  const auto curve = analytic_dmt(spec.cfg, spec.num_points);
  const double r_max = max_multiplexing_gain(spec.cfg);
  MonteCarloBudget budget;
  budget.min_trials = spec.trials;
  budget.seed = spec.seed;
  budget.workers = spec.workers;
  CsvWriter csv(spec_stamp(spec));
  csv.header({"r", "d_analytic", "d_empirical"});
  for (const auto& p : curve.points) {
    csv.cell(p.r).cell(p.d);
    if (p.r < r_max) {
      try {
        csv.cell(empirical_diversity(spec.cfg, p.r, spec.gamma_grid, spec.source, budget));
      } catch (const DegenerateFit&) {
        csv.empty();
      }
    } else {
      csv.empty();
    }
    csv.end_row();
  }
  return {0, csv.str()};
}

void qos_cells(CsvWriter& csv, const QosSolution& sol, int width) {
  csv.cell(sol.lambda_k_max).cell(sol.feasible ? 1 : 0);
  for (int j = 0; j < width; ++j) {
    if (sol.feasible && j < static_cast<int>(sol.omega.size())) csv.cell(sol.omega[j]);
    else csv.empty();
  }
  csv.cell(sol.zeta);
}

std::vector<std::string> omega_names(int width) {
  std::vector<std::string> names;
  for (int j = 1; j <= width; ++j) names.push_back("omega_" + std::to_string(j));
  return names;
}

QosSolution qos_at(const SystemConfig& cfg, int k, ZetaMode mode, int grid_size) {
  if (cfg.link == LinkCase::NoDirectLink && mode == ZetaMode::Search) return search_zeta(cfg, k, grid_size);
  return evaluate_assignment(cfg, k);
}

ExperimentResult run_qos_sweep(const ExperimentSpec& spec) {
  validate(spec.cfg);
  const int k = user_index(spec);
  const auto axis = axis_or(spec, {"R", 0.0, 3.0, 61, false});
  const int width = spec.cfg.num_users;
  CsvWriter csv(spec_stamp(spec));
  auto names = std::vector<std::string>{axis.param, "lambda_k_max", "feasible"};
  for (auto& n : omega_names(width)) names.push_back(n);
  names.push_back("zeta");
  csv.header(names);
  for (double x : axis.values()) {
    SystemConfig cfg = spec.cfg;
    set_param(cfg, axis.param, x);
    csv.cell(x);
    qos_cells(csv, qos_at(cfg, k, spec.zeta_mode, spec.grid_size), width);
    csv.end_row();
  }
  return {0, csv.str()};
}

constexpr int kFigWidth = 6;
const std::vector<double> kFigLambdas{0.0, 0.1, 0.2, 0.1, 0.15, 0.1};

SystemConfig figure_config(LinkCase link, int m) {
  SystemConfig cfg;
  cfg.link = link;
  cfg.num_users = m;
  cfg.gamma_p = 50.0;
  cfg.gamma_s = 30.0;
  cfg.lambda_p = 0.1;
  cfg.lambda_s.assign(kFigLambdas.begin(), kFigLambdas.begin() + m);
  return cfg;
}

SweepAxis figure_axis(const ExperimentSpec& spec) {
  auto axis = axis_or(spec, {"R", 0.0, 3.0, 61, false});
  if (axis.param != "R") throw ConfigError("field 'sweep': figure presets sweep R only");
  return axis;
}

std::string figure_stamp(const ExperimentSpec& spec, LinkCase link, const SweepAxis& axis) {
  std::string s = "# ccr experiment=" + std::string(to_string(spec.kind)) + " case=" +
                  std::string(to_string(link)) + " M=4,5,6 gamma_p=50 gamma_s=30 lambda_p=0.1 lambda_s=" +
                  join(kFigLambdas) + " k=1 sweep=" + sweep_text(axis);
  if (link == LinkCase::NoDirectLink) s += " grid_size=" + std::to_string(spec.grid_size);
  return s;
}

ExperimentResult run_figure(const ExperimentSpec& spec, LinkCase link) {
  const auto axis = figure_axis(spec);
  CsvWriter csv(figure_stamp(spec, link, axis));
  std::vector<std::string> names{"series", "M", "R", "lambda_1_max", "feasible"};
  for (auto& n : omega_names(kFigWidth)) names.push_back(n);
  names.push_back("zeta");
  csv.header(names);

  struct Series {
    std::string name;
    ZetaMode mode;
    std::vector<int> users;
  };
  std::vector<Series> series;
  if (link == LinkCase::DirectLink) {
    series.push_back({"direct", ZetaMode::Fixed, {4, 5, 6}});
  } else {
    series.push_back({"zeta_search", ZetaMode::Search, {4, 5, 6}});
    series.push_back({"zeta_half", ZetaMode::Fixed, {6}});
  }
  for (const auto& s : series)
    for (int m : s.users)
      for (double r : axis.values()) {
        SystemConfig cfg = figure_config(link, m);
        cfg.rate = r;
        csv.cell(s.name).cell(m).cell(r);
        qos_cells(csv, qos_at(cfg, 0, s.mode, spec.grid_size), kFigWidth);
        csv.end_row();
      }
  return {0, csv.str()};
}

}  // namespace

std::string_view to_string(ExperimentKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (text == kKindNames[i]) return static_cast<ExperimentKind>(i);
  bad_value("experiment", text, "outage-curve|validate|dmt|qos-sweep|fig1|fig2");
}

std::vector<double> SweepAxis::values() const {
  if (steps == 1) return {min};
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double n = steps - 1;
  auto lerp = [n](double a, double b, int i) { return (a * (n - i) + b * i) / n; };
  for (int i = 0; i < steps; ++i)
    out[i] = log ? std::pow(10.0, lerp(std::log10(min), std::log10(max), i)) : lerp(min, max, i);
  out.front() = min;
  out.back() = max;
  return out;
}

SweepAxis SweepAxis::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4 && parts.size() != 5) bad_value("sweep", text, "param:min:max:steps[:log]");
  SweepAxis a;
  a.param = parts[0] == "gamma" ? "gamma_p" : std::string(parts[0]);
  if (a.param != "gamma_p" && a.param != "gamma_s" && a.param != "R" && a.param != "zeta")
    throw ConfigError("field 'sweep': unknown parameter '" + std::string(parts[0]) + "'");
  a.min = to_double("sweep", parts[1]);
  a.max = to_double("sweep", parts[2]);
  const auto steps = to_int("sweep", parts[3]);
  if (parts.size() == 5) {
    if (parts[4] != "log") bad_value("sweep", text, "optional ':log' suffix");
    a.log = true;
  }
  if (steps < 1 || steps > 1'000'000) throw ConfigError("field 'sweep': steps must lie in [1, 1e6]");
  a.steps = static_cast<int>(steps);
  if (!(a.min <= a.max)) throw ConfigError("field 'sweep': min must not exceed max");
  if (a.log && !(a.min > 0.0)) throw ConfigError("field 'sweep': log sweeps need min > 0");
  return a;
}

const std::vector<std::string>& spec_keys() {
  static const std::vector<std::string> keys{
      "experiment", "M",      "gamma_p", "gamma_s", "R",          "case",      "zeta",
      "lambda_p",   "lambda_s", "k",     "trials",  "seed",       "workers",   "out",
      "sweep",      "num_points", "grid_size", "gamma_grid", "source", "grid", "zeta_mode"};
  return keys;
}

void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value) {
  value = trim(value);
  auto& cfg = spec.cfg;
  if (key == "experiment") spec.kind = parse_experiment_kind(value);
  else if (key == "M") cfg.num_users = static_cast<int>(to_int(key, value));
  else if (key == "gamma_p" || key == "gamma") cfg.gamma_p = to_double(key, value);
  else if (key == "gamma_s") cfg.gamma_s = to_double(key, value);
  else if (key == "R") cfg.rate = to_double(key, value);
  else if (key == "case") {
    try {
      cfg.link = parse_link_case(value);
    } catch (const ConfigError&) {
      bad_value(key, value, "direct|nodirect");
    }
  } else if (key == "zeta") cfg.zeta = to_double(key, value);
  else if (key == "lambda_p") cfg.lambda_p = to_double(key, value);
  else if (key == "lambda_s") cfg.lambda_s = to_list(key, value);
  else if (key == "k") spec.user = static_cast<int>(to_int(key, value));
  else if (key == "trials") {
    spec.trials = to_int(key, value);
    if (spec.trials < 1) bad_value(key, value, "trials >= 1");
  } else if (key == "seed") spec.seed = to_seed(key, value);
  else if (key == "workers") {
    const auto w = to_int(key, value);
    if (w < 1 || w > 4096) bad_value(key, value, "1..4096");
    spec.workers = static_cast<int>(w);
  } else if (key == "out") spec.output_path = std::string(value);
  else if (key == "sweep") spec.sweep = SweepAxis::parse(value);
  else if (key == "num_points") spec.num_points = static_cast<int>(to_int(key, value));
  else if (key == "grid_size") {
    const auto g = to_int(key, value);
    if (g < 2 || g > 1'000'000) bad_value(key, value, "2..1e6");
    spec.grid_size = static_cast<int>(g);
  } else if (key == "gamma_grid") spec.gamma_grid = to_list(key, value);
  else if (key == "source") {
    if (value == "closed") spec.source = OutageSource::ClosedForm;
    else if (value == "mc") spec.source = OutageSource::MonteCarlo;
    else bad_value(key, value, "closed|mc");
  } else if (key == "grid") {
    if (value == "standard") spec.grid = ValidationGrid::Standard;
    else if (value == "single") spec.grid = ValidationGrid::Single;
    else bad_value(key, value, "standard|single");
  } else if (key == "zeta_mode") {
    if (value == "fixed") spec.zeta_mode = ZetaMode::Fixed;
    else if (value == "search") spec.zeta_mode = ZetaMode::Search;
    else bad_value(key, value, "fixed|search");
  } else {
    throw ConfigError("unknown field '" + std::string(key) + "'");
  }
}

void apply_spec_text(ExperimentSpec& spec, std::string_view text, std::string_view origin) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    try {
      apply_setting(spec, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

ExperimentSpec parse_spec(std::string_view text, std::string_view origin) {
  ExperimentSpec spec;
  apply_spec_text(spec, text, origin);
  return spec;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string spec_stamp(const ExperimentSpec& spec) {
  const auto& c = spec.cfg;
  std::string s = "# ccr experiment=" + std::string(to_string(spec.kind)) + " case=" + std::string(to_string(c.link)) +
                  " M=" + std::to_string(c.num_users) + " gamma_p=" + format_number(c.gamma_p) +
                  " gamma_s=" + format_number(c.gamma_s) + " R=" + format_number(c.rate) +
                  " zeta=" + format_number(c.zeta) + " lambda_p=" + format_number(c.lambda_p) +
                  " lambda_s=" + join(secondary_targets(c)) + " k=" + std::to_string(spec.user) +
                  " trials=" + std::to_string(spec.trials) + " seed=" + std::to_string(spec.seed);
  if (spec.sweep) s += " sweep=" + sweep_text(*spec.sweep);
  switch (spec.kind) {
    case ExperimentKind::Validate:
      s += spec.grid == ValidationGrid::Standard ? " grid=standard" : " grid=single";
      break;
    case ExperimentKind::Dmt:
      s += " num_points=" + std::to_string(spec.num_points) + " gamma_grid=" + join(spec.gamma_grid) +
           (spec.source == OutageSource::ClosedForm ? " source=closed" : " source=mc");
      break;
    case ExperimentKind::QosSweep:
      s += spec.zeta_mode == ZetaMode::Search ? " zeta_mode=search grid_size=" + std::to_string(spec.grid_size)
                                              : " zeta_mode=fixed";
      break;
    default:
      break;
  }
  return s;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::OutageCurve: return run_outage_curve(spec);
    case ExperimentKind::Validate: return run_validate(spec);
    case ExperimentKind::Dmt: return run_dmt(spec);
    case ExperimentKind::QosSweep: return run_qos_sweep(spec);
    case ExperimentKind::Fig1: return run_figure(spec, LinkCase::DirectLink);
    case ExperimentKind::Fig2: return run_figure(spec, LinkCase::NoDirectLink);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace ccr
