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


// Command-line entry point: ctigbench <command> [--config F] [--seed S]
// [--out DIR] [--threads K]. `run` takes the command from the config's
// "experiment" key.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ctigbench/commands.h"
#include "ctigbench/config.h"
#include "ctigbench/errors.h"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
};

void AddCommonOptions(CLI::App* app, Options& opt) {
  app->add_option("--config", opt.config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app->add_option("--seed", opt.seed, "master seed (overrides the config)");
  app->add_option("--out", opt.out, "output directory (overrides the config)");
  app->add_option("--threads", opt.threads,
                  "worker threads; 0 uses CTIG_THREADS or the hardware count")
      ->check(CLI::Range(0, 1024));
}

nlohmann::json LoadInput(const Options& opt) {
  nlohmann::json input = nlohmann::json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw ctig::ConfigError({opt.config_path + ": cannot open config file"});
    try {
      input = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ctig::ConfigError({opt.config_path + ": " + e.what()});
    }
    if (!input.is_object()) throw ctig::ConfigError({"(root): expected an object"});
  }
  if (opt.seed) input["seed"] = *opt.seed;
  if (opt.out) input["out"] = *opt.out;
  if (opt.threads) input["threads"] = *opt.threads;
  return input;
}

int Run(const std::string& subcommand, const Options& opt) {
  nlohmann::json input = LoadInput(opt);
  std::string command = subcommand;
  if (command == "run") {
    if (!input.contains("experiment") || input["experiment"].is_null()) {
      throw ctig::ConfigError({"experiment: required by 'run'"});
    }
  } else if (input.contains("experiment") && !input["experiment"].is_null() &&
             input["experiment"] != command) {
    throw ctig::ConfigError({"experiment: config names '" +
                             input["experiment"].get<std::string>() +
                             "' but the command is '" + command + "'"});
  } else {
    input["experiment"] = command;
  }
  const ctig::Config config = ctig::Config::FromJson(input);
  command = config.String("experiment");
  const std::string out = config.String("out");
  const ctig::Report report = ctig::RunCommand(command, config, out);
  std::cout << command << ": wrote " << out << "/report.json";
  if (!report.tables().empty()) std::cout << " and " << report.tables().size() << " tables";
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal event sequence benchmark"};
  app.require_subcommand(1);
  Options opt;
  std::string chosen;
  std::vector<std::string> commands = ctig::ExperimentNames();
  commands.push_back("run");
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(
        name, name == "run" ? "run the command named by the config's experiment key"
                            : "run the " + name + " pipeline");
    AddCommonOptions(sub, opt);
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    return Run(chosen, opt);
  } catch (const ctig::ConfigError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
