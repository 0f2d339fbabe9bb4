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


// Run configuration: a JSON document checked against a fixed schema. Every
// offending key is reported with its dotted path; missing keys take their
// defaults, and the resolved document is echoed into every report.

#ifndef CTIGBENCH_CONFIG_H_
#define CTIGBENCH_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ctig {

class Config {
 public:
  // Validates `input` (an object) and fills defaults. Throws ConfigError
  // listing every problem.
  static Config FromJson(const nlohmann::json& input);
  // Reads and validates a file. Throws ConfigError for unreadable or
  // malformed files as well.
  static Config FromFile(const std::string& path);
  static Config Defaults() { return FromJson(nlohmann::json::object()); }

  // Lists every problem with `input` without throwing.
  static std::vector<std::string> Check(const nlohmann::json& input);

  // Typed access by dotted path, e.g. "model.num_types". Throws
  // ParameterError for unknown paths or a type mismatch.
  std::int64_t Int(std::string_view path) const;
  std::uint64_t Uint(std::string_view path) const;
  double Number(std::string_view path) const;
  std::string String(std::string_view path) const;
  bool IsNull(std::string_view path) const;
  const nlohmann::json& At(std::string_view path) const;

  const nlohmann::json& resolved() const { return resolved_; }

 private:
  explicit Config(nlohmann::json resolved) : resolved_(std::move(resolved)) {}
  nlohmann::json resolved_;
};

// The experiment names accepted by the "experiment" key.
const std::vector<std::string>& ExperimentNames();

}  // namespace ctig

#endif  // CTIGBENCH_CONFIG_H_
