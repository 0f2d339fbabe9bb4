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


#include "ctigbench/config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "ctigbench/errors.h"

namespace ctig {

namespace {

using nlohmann::json;

enum class Kind { kInt, kUint, kNumber, kString, kEnum, kCells };

struct Field {
  std::string path;
  Kind kind = Kind::kInt;
  json fallback = nullptr;
  std::optional<double> min = {};
  std::optional<double> max = {};
  bool min_exclusive = false;
  bool max_exclusive = false;
  std::vector<std::string> choices = {};
  bool nullable = false;
};

Field Int(std::string path, std::int64_t fallback, std::optional<double> min = {},
          std::optional<double> max = {}) {
  return {std::move(path), Kind::kInt, fallback, min, max};
}

Field Num(std::string path, double fallback, std::optional<double> min = {},
          bool min_exclusive = false, std::optional<double> max = {},
          bool max_exclusive = false) {
  return {std::move(path), Kind::kNumber, fallback, min, max, min_exclusive, max_exclusive};
}

Field Choice(std::string path, std::string fallback, std::vector<std::string> choices) {
  Field f{std::move(path), Kind::kEnum, std::move(fallback)};
  f.choices = std::move(choices);
  return f;
}

Field Nullable(Field f) {
  f.nullable = true;
  return f;
}

const std::vector<Field>& Schema() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    Field experiment = Choice("experiment", "", ExperimentNames());
    experiment.fallback = nullptr;
    experiment.nullable = true;
    f.push_back(experiment);
    f.push_back({"seed", Kind::kUint, std::uint64_t{0}});
    f.push_back(Int("threads", 0, 0, 1024));
    f.push_back({"out", Kind::kString, "out"});
    f.push_back(Choice("mode", "ces", {"ces", "ctig"}));
    f.push_back(Num("horizon", 1000.0, 0.0, true));
    f.push_back(Nullable(Num("tau_split", 0.0, 0.0, true)));
    f.back().fallback = nullptr;

    f.push_back(Int("model.num_types", 7, 1, 4096));
    f.push_back(Num("model.edge_probability", 0.5, 0.0, false, 1.0));
    f.push_back(Num("model.lambda_min", 0.5, 0.0, true));
    f.push_back(Num("model.lambda_max", 2.0, 0.0, true));
    f.push_back(Num("model.tau_bar", 1.0, 0.0, true));

    f.push_back(Int("ctig.num_nodes", 5, 2, 1000));
    f.push_back(Int("ctig.feature_dim", 5, 1));
    f.push_back(Num("ctig.nu0", 100.0, 0.0, true));
    f.push_back(Num("ctig.nu1", 0.55, 0.0, true, 1.0, true));
    f.push_back(Int("ctig.noncausal", 2, 0));

    f.push_back(Int("distance.iters", 32, 1));

    Field grid{"variance_study.grid", Kind::kCells,
               json::array({{{"horizon", 250.0}, {"iters", 10}},
                            {{"horizon", 250.0}, {"iters", 40}},
                            {{"horizon", 250.0}, {"iters", 160}}})};
    f.push_back(grid);
    f.push_back(Int("variance_study.replications", 100, 30));

    f.push_back(Int("evaluation.negatives_per_positive", 1, 1));
    f.push_back(Choice("evaluation.sampling_mode", "transductive", {"global", "transductive"}));
    f.push_back(Choice("evaluation.metric", "accuracy", {"accuracy", "average_precision", "auc"}));

    f.push_back(Int("experiment_a.pairs", 100, 1));
    f.push_back(Nullable(Num("experiment_a.dagger_scale", 0.0, 0.0)));
    f.back().fallback = nullptr;
    f.push_back(Choice("experiment_a.predictor", "oracle", {"oracle", "external"}));
    f.push_back(Nullable({"experiment_a.scores_dir", Kind::kString, nullptr}));

    f.push_back(Int("experiment_b.runs", 100, 1));
    f.push_back(Int("experiment_b.shuffles", 10, 1));

    f.push_back(Int("hypothesis.pairs", 300, 1));
    f.push_back(Num("hypothesis.star_scale_max", 2.0, 0.0));
    f.push_back(Num("hypothesis.dagger_scale_max", 1.0, 0.0));
    f.push_back(Num("hypothesis.delta_star", 0.2, 0.0, true, 1.0));
    f.push_back(Int("hypothesis.beta_points", 10, 1));
    f.push_back(Int("hypothesis.delta_points", 20, 1));

    f.push_back(Int("properties.models", 500, 1));
    f.push_back(Int("properties.max_parents", 20, 1, 30));
    f.push_back(Int("properties.pns_configs", 20, 1));
    f.push_back(Int("properties.pns_parents", 3, 1, 20));
    f.push_back(Num("properties.pns_horizon", 1e4, 0.0, true));

    f.push_back(Choice("export.source", "experiment-a", {"experiment-a", "experiment-b"}));

    f.push_back(Num("lowess.fraction", 0.95, 0.0, true, 1.0));
    return f;
  }();
  return fields;
}

const Field* FindField(std::string_view path) {
  for (const Field& f : Schema()) {
    if (f.path == path) return &f;
  }
  return nullptr;
}

bool IsSection(std::string_view path) {
  const std::string prefix = std::string(path) + ".";
  for (const Field& f : Schema()) {
    if (f.path.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

std::string Render(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void CheckRange(const Field& f, double v, std::vector<std::string>& problems) {
  const bool below = f.min && (f.min_exclusive ? v <= *f.min : v < *f.min);
  const bool above = f.max && (f.max_exclusive ? v >= *f.max : v > *f.max);
  if (!below && !above) return;
  std::string range = (f.min ? (f.min_exclusive ? "(" : "[") + Render(*f.min) : "(-inf");
  range += ", ";
  range += f.max ? Render(*f.max) + (f.max_exclusive ? ")" : "]") : "inf)";
  problems.push_back(f.path + ": value " + Render(v) + " outside " + range);
}

void CheckValue(const Field& f, const json& v, std::vector<std::string>& problems) {
  if (v.is_null()) {
    if (!f.nullable) problems.push_back(f.path + ": null is not allowed");
    return;
  }
  switch (f.kind) {
    case Kind::kInt:
      if (!v.is_number_integer()) {
        problems.push_back(f.path + ": expected an integer");
        return;
      }
      CheckRange(f, static_cast<double>(v.get<std::int64_t>()), problems);
      return;
    case Kind::kUint:
      if (!v.is_number_unsigned() &&
          !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        problems.push_back(f.path + ": expected a non-negative integer");
      }
      return;
    case Kind::kNumber:
      if (!v.is_number()) {
        problems.push_back(f.path + ": expected a number");
        return;
      }
      if (!std::isfinite(v.get<double>())) {
        problems.push_back(f.path + ": expected a finite number");
        return;
      }
      CheckRange(f, v.get<double>(), problems);
      return;
    case Kind::kString:
      if (!v.is_string()) problems.push_back(f.path + ": expected a string");
      return;
    case Kind::kEnum: {
      if (!v.is_string()) {
        problems.push_back(f.path + ": expected a string");
        return;
      }
      const auto s = v.get<std::string>();
      if (std::find(f.choices.begin(), f.choices.end(), s) == f.choices.end()) {
        std::string all;
        for (const auto& c : f.choices) all += (all.empty() ? "" : ", ") + c;
        problems.push_back(f.path + ": '" + s + "' is not one of {" + all + "}");
      }
      return;
    }
    case Kind::kCells: {
      if (!v.is_array() || v.empty()) {
        problems.push_back(f.path + ": expected a nonempty array of {horizon, iters}");
        return;
      }
      for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string at = f.path + "[" + std::to_string(k) + "]";
        const json& cell = v[k];
        if (!cell.is_object()) {
          problems.push_back(at + ": expected an object");
          continue;
        }
        for (const auto& [key, _] : cell.items()) {
          if (key != "horizon" && key != "iters") problems.push_back(at + "." + key + ": unknown key");
        }
        if (!cell.contains("horizon") || !cell["horizon"].is_number() ||
            !(cell["horizon"].get<double>() > 0.0)) {
          problems.push_back(at + ".horizon: expected a positive number");
        }
        if (!cell.contains("iters") || !cell["iters"].is_number_integer() ||
            cell["iters"].get<std::int64_t>() < 1) {
          problems.push_back(at + ".iters: expected an integer >= 1");
        }
      }
      return;
    }
  }
}

void Walk(const json& node, const std::string& prefix, std::vector<std::string>& problems) {
  for (const auto& [key, value] : node.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (const Field* f = FindField(path)) {
      CheckValue(*f, value, problems);
    } else if (IsSection(path)) {
      if (!value.is_object()) {
        problems.push_back(path + ": expected an object");
      } else {
        Walk(value, path, problems);
      }
    } else {
      problems.push_back(path + ": unknown key");
    }
  }
}

json::json_pointer Pointer(std::string_view path) {
  std::string p = "/";
  for (const char c : path) p += c == '.' ? '/' : c;
  return json::json_pointer(p);
}

}  // namespace

const std::vector<std::string>& ExperimentNames() {
  static const std::vector<std::string> names = {
      "generate",      "ctig",         "distance",   "variance-study", "experiment-a",
      "experiment-b",  "properties",   "hypothesis", "export"};
  return names;
}

std::vector<std::string> Config::Check(const json& input) {
  std::vector<std::string> problems;
  if (!input.is_object()) {
    problems.push_back("(root): expected an object");
    return problems;
  }
  Walk(input, "", problems);
  if (problems.empty()) {
    // Cross-field constraints, checked on the resolved values.
    auto get = [&](const char* path) {
      const auto ptr = Pointer(path);
      return input.contains(ptr) ? input.at(ptr).get<double>()
                                 : FindField(path)->fallback.get<double>();
    };
    if (get("model.lambda_min") >= get("model.lambda_max")) {
      problems.push_back("model.lambda_min: must be below model.lambda_max");
    }
    const auto tau = Pointer("tau_split");
    if (input.contains(tau) && !input.at(tau).is_null() &&
        input.at(tau).get<double>() >= get("horizon")) {
      problems.push_back("tau_split: must be below horizon");
    }
  }
  return problems;
}

Config Config::FromJson(const json& input) {
  auto problems = Check(input);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  json resolved = json::object();
  for (const Field& f : Schema()) {
    const auto ptr = Pointer(f.path);
    resolved[ptr] = input.contains(ptr) ? input.at(ptr) : f.fallback;
  }
  return Config(std::move(resolved));
}

Config Config::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  return FromJson(parsed);
}

const json& Config::At(std::string_view path) const {
  if (!FindField(path)) throw ParameterError("unknown config key " + std::string(path));
  return resolved_.at(Pointer(path));
}

bool Config::IsNull(std::string_view path) const { return At(path).is_null(); }

std::int64_t Config::Int(std::string_view path) const {
  const json& v = At(path);
  if (!v.is_number_integer()) throw ParameterError(std::string(path) + " is not an integer");
  return v.get<std::int64_t>();
}

std::uint64_t Config::Uint(std::string_view path) const {
  const json& v = At(path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParameterError(std::string(path) + " is not a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double Config::Number(std::string_view path) const {
  const json& v = At(path);
  if (!v.is_number()) throw ParameterError(std::string(path) + " is not a number");
  return v.get<double>();
}

std::string Config::String(std::string_view path) const {
  const json& v = At(path);
  if (!v.is_string()) throw ParameterError(std::string(path) + " is not a string");
  return v.get<std::string>();
}

}  // namespace ctig
