// Copyright 2026 The scpsd Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace scp {

// Malformed input text (JSON, CSV).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a model invariant. `field()` is a path such
// as "conventional[3].for".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Calendar partitions do not cover the horizon.
class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LP solver breakdown (singular basis that refactorization cannot repair).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Process exit codes shared by all CLI commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitTargetUnmet = 3,
  kExitNumerical = 4,
};

}  // namespace scp
