// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccr/config.hpp"
#include "ccr/dmt.hpp"

namespace ccr {

enum class ExperimentKind { OutageCurve, Validate, Dmt, QosSweep, Fig1, Fig2 };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

/// `param:min:max:steps[:log]`.  Parameters: gamma_p (alias gamma), gamma_s, R, zeta.
struct SweepAxis {
  std::string param;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  bool log = false;

  std::vector<double> values() const;
  static SweepAxis parse(std::string_view text);
};

enum class ValidationGrid { Standard, Single };
enum class ZetaMode { Fixed, Search };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::OutageCurve;
  SystemConfig cfg;
  std::optional<SweepAxis> sweep;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output_path;  ///< empty means stdout

  int user = 1;  ///< designated secondary user k, 1-based
  int num_points = 11;
  int grid_size = 999;
  std::vector<double> gamma_grid{1e2, 1e3, 1e4, 1e5};
  OutageSource source = OutageSource::ClosedForm;
  ValidationGrid grid = ValidationGrid::Standard;
  ZetaMode zeta_mode = ZetaMode::Fixed;
};

/// Keys accepted in spec files and as `--key value` overrides.
const std::vector<std::string>& spec_keys();

/// Applies one `key = value` setting.  Throws ConfigError naming the field.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Parses a flat `key = value` file (`#` starts a comment).  Errors carry
/// `origin:line:`.
ExperimentSpec parse_spec(std::string_view text, std::string_view origin = "<spec>");
void apply_spec_text(ExperimentSpec& spec, std::string_view text, std::string_view origin);

/// Shortest round-trip decimal form.
std::string format_number(double x);

/// The `#`-prefixed reproducibility stamp: every resolved field except
/// `workers` and `output_path`, which do not affect the numbers.
std::string spec_stamp(const ExperimentSpec& spec);

struct ExperimentResult {
  int exit_code = 0;  ///< 0 ok, 1 statistical validation failure
  std::string csv;
};

/// Runs the experiment and returns the CSV text; does not touch the file
/// system.  Throws ConfigError for inconsistent specs.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace ccr
