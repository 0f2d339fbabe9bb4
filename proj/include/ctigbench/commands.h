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


// The pipeline behind each command-line subcommand.

#ifndef CTIGBENCH_COMMANDS_H_
#define CTIGBENCH_COMMANDS_H_

#include <optional>
#include <string>
#include <string_view>

#include "ctigbench/causal_model.h"
#include "ctigbench/config.h"
#include "ctigbench/counterfactual.h"
#include "ctigbench/ctig_builder.h"
#include "ctigbench/report.h"

namespace ctig {

// A model drawn as configured: a random event model in "ces" mode, a
// causal temporal interaction graph in "ctig" mode.
struct ConfiguredModel {
  CausalModel model;
  std::optional<EdgeSpace> edges;  // set in ctig mode
};

ConfiguredModel MakeConfiguredModel(const Config& config, std::uint64_t seed);
CtigParams MakeCtigParams(const Config& config, std::uint64_t seed);
ExperimentConfig MakeExperimentConfig(const Config& config);
HypothesisConfig MakeHypothesisConfig(const Config& config);

// Runs `command` (one of ExperimentNames()) with the master seed from the
// config, writes report.json, its tables and any datasets into `out_dir`,
// and returns the report. Throws ParameterError for an unknown command.
Report RunCommand(std::string_view command, const Config& config,
                  const std::string& out_dir);

}  // namespace ctig

#endif  // CTIGBENCH_COMMANDS_H_
