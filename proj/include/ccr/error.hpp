// Copyright 2026 The ccrelay Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ccr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario parameters or a malformed config file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A channel vector (or its projection) is numerically null.
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

/// Operation called for the wrong link topology.
class InvalidCase : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Slope fit over an outage curve that vanished numerically.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

/// The primary throughput target exceeds 1 - outage.
class PrimaryInfeasible : public Error {
 public:
  using Error::Error;
};

/// The secondary targets exceed the secondary success probability.
class SecondaryInfeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace ccr
