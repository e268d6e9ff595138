// Copyright 2026 The qnn-entropy Authors
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

namespace qnn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The SVD routine did not converge.
class DecompositionError : public Error {
public:
  using Error::Error;
};

/// Every singular value vanished; there is no state left to normalize.
class DegenerateStateError : public Error {
public:
  using Error::Error;
};

/// Bad argument: size, index, range or shape mismatch.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A gate matrix failed the unitarity check.
class UnitarityError : public Error {
public:
  using Error::Error;
};

/// A dense representation was requested for a register that is too large.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Internal invariant of a state no longer holds.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// A derived metric is undefined for the given inputs.
class UndefinedMetricError : public Error {
public:
  using Error::Error;
};

/// A threshold was never reached within the sampled range.
class NotConvergedError : public Error {
public:
  using Error::Error;
};

/// Not enough usable data points for a fit.
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

/// Invalid experiment configuration. `field()` names the offending key.
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string &what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string &field() const { return field_; }

private:
  std::string field_;
};

} // namespace qnn
