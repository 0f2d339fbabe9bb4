/*
 * Copyright 2026 The ctigbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CTIGBENCH_ERRORS_H_
#define CTIGBENCH_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace ctig {

// Invalid argument values (non-positive rates, thresholds out of range, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a documented precondition of an operation.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Directed distance over a realization in which no type ever triggered.
class UndefinedDistanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// AP / AUC requested on single-class labels.
class MetricUndefinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Negative sampling impossible for the given positives.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conditional probability over an empty population.
class UndefinedProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empirical estimate over an empty conditioning cell.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured bound.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset / scores file, or an unwritable output path.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration rejected by schema validation. Carries every problem found,
// each prefixed by its key path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace ctig

#endif  // CTIGBENCH_ERRORS_H_
