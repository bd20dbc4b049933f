// Copyright 2026 The saddle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace saddle {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Vector>;

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed geometry: bad sandwich, origin outside, unbounded chord.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// The 1-D sampler could not produce a draw.
class SamplerError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver configuration (epsilon out of range, zero payoff, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance text. The message carries the line (syntax errors)
/// or the field path (structural errors).
class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A runtime-asserted invariant failed. Always a bug or a wrong input claim
/// (e.g. a user-supplied width bound that is too small).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch between a point and the object it is used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace saddle
