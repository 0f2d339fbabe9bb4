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


// Python bindings for the core library.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctigbench/causal_model.h"
#include "ctigbench/commands.h"
#include "ctigbench/config.h"
#include "ctigbench/counterfactual.h"
#include "ctigbench/ctig_builder.h"
#include "ctigbench/dataset.h"
#include "ctigbench/errors.h"
#include "ctigbench/lowess.h"
#include "ctigbench/model_distance.h"
#include "ctigbench/properties.h"

namespace py = pybind11;

namespace ctig {
namespace {

EventSequence ToSequence(const std::vector<std::pair<int, double>>& events, double start,
                         double horizon) {
  EventSequence s;
  s.start = start;
  s.horizon = horizon;
  for (const auto& [type, time] : events) s.events.push_back({type, time});
  return s;
}

std::vector<std::pair<int, double>> FromSequence(const EventSequence& s) {
  std::vector<std::pair<int, double>> out;
  out.reserve(s.size());
  for (const Event& e : s.events) out.emplace_back(e.type, e.time);
  return out;
}

EvaluationSet ToEvalSet(const std::vector<std::tuple<int, double, int>>& items) {
  EvaluationSet e;
  for (const auto& [type, time, label] : items) e.items.push_back({type, time, label});
  if (!e.items.empty()) {
    e.window_begin = e.items.front().time;
    e.window_end = e.items.back().time;
  }
  return e;
}

std::vector<std::tuple<int, double, int>> FromEvalSet(const EvaluationSet& e) {
  std::vector<std::tuple<int, double, int>> out;
  for (const auto& item : e.items) out.emplace_back(item.type, item.time, item.label);
  return out;
}

py::dict DatasetDict(const Dataset& d) {
  const DatasetHeader& h = d.header;
  py::dict header;
  header["format_version"] = h.format_version;
  header["mode"] = std::string(ToString(h.mode));
  header["n_types"] = h.num_types;
  header["n_nodes"] = h.num_nodes ? py::object(py::int_(*h.num_nodes)) : py::none();
  header["horizon"] = h.horizon;
  header["tau_bar"] = h.tau_bar;
  header["train"] = py::make_tuple(h.train_begin, h.train_end);
  header["test"] = py::make_tuple(h.test_begin, h.test_end);
  header["sampling_mode"] = std::string(ToString(h.sampling_mode));
  header["d_bar"] = h.d_bar ? py::object(py::float_(*h.d_bar)) : py::none();
  py::list rows;
  for (const auto& r : d.rows) {
    rows.append(py::make_tuple(
        std::string(ToString(r.split)), r.id,
        r.src ? py::object(py::int_(*r.src)) : py::none(),
        r.dst ? py::object(py::int_(*r.dst)) : py::none(), r.time,
        r.label ? py::object(py::int_(*r.label)) : py::none()));
  }
  py::dict out;
  out["header"] = header;
  out["rows"] = rows;
  return out;
}

}  // namespace
}  // namespace ctig

PYBIND11_MODULE(_core, m) {
  using namespace ctig;
  m.doc() = "Causal event sequence benchmark core";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<UndefinedDistanceError>(m, "UndefinedDistanceError",
                                                 PyExc_ArithmeticError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<EstimationError>(m, "EstimationError", PyExc_ArithmeticError);

  py::class_<CausalModel>(m, "CausalModel")
      .def(py::init<std::vector<double>, Eigen::MatrixXd, double>(), py::arg("lambdas"),
           py::arg("theta"), py::arg("tau_bar") = 1.0)
      .def_property_readonly("num_types", &CausalModel::num_types)
      .def_property_readonly("lambdas", &CausalModel::lambdas)
      .def_property_readonly("theta",
                             [](const CausalModel& c) { return Eigen::MatrixXd(c.theta()); })
      .def_property_readonly("tau_bar", &CausalModel::tau_bar)
      .def("parents", [](const CausalModel& c, int i) {
        const auto p = c.parents(i);
        return std::vector<int>(p.begin(), p.end());
      });

  py::class_<Realization>(m, "Realization")
      .def_property_readonly("triggers",
                             [](const Realization& r) {
                               std::vector<std::vector<double>> out;
                               for (const auto& s : r.triggers) out.push_back(s.times);
                               return out;
                             })
      .def_property_readonly("events",
                             [](const Realization& r) { return FromSequence(r.accepted); })
      .def_property_readonly("horizon", [](const Realization& r) { return r.accepted.horizon; })
      .def("num_triggers", &Realization::NumTriggers)
      .def("passes_degeneracy_check",
           [](const Realization& r) { return PassesDegeneracyCheck(r); });

  m.def(
      "sample_random_model",
      [](int n, double p, double lo, double hi, double tau, std::uint64_t seed) {
        return SampleRandomModel(n, ErdosRenyi{p}, {lo, hi}, tau, seed);
      },
      py::arg("num_types"), py::arg("edge_probability") = 0.5, py::arg("lambda_min") = 0.5,
      py::arg("lambda_max") = 2.0, py::arg("tau_bar") = 1.0, py::arg("seed") = 0);

  m.def(
      "generate_sequence",
      [](const CausalModel& model, double horizon, std::uint64_t seed) {
        py::gil_scoped_release release;
        return GenerateSequence(model, horizon, seed);
      },
      py::arg("model"), py::arg("horizon"), py::arg("seed"));

  m.def(
      "directed_distance",
      [](const CausalModel& b, const CausalModel& a, const Realization& ra) {
        return ComputeDirectedDistance(b, a, ra.accepted, ra.triggers).value;
      },
      py::arg("model_b"), py::arg("model_a"), py::arg("realization_a"),
      "Error of model_b's cross-predictions on model_a's realization.");

  m.def(
      "symmetric_distance",
      [](const CausalModel& a, const CausalModel& b, const Realization& ra,
         const Realization& rb) {
        const DistanceReport r = ComputeSymmetricDistance(a, b, ra, rb);
        py::dict out;
        out["symmetric"] = r.symmetric;
        out["d_b_on_a"] = r.d_b_on_a;
        out["d_a_on_b"] = r.d_a_on_b;
        return out;
      },
      py::arg("model_a"), py::arg("model_b"), py::arg("realization_a"),
      py::arg("realization_b"));

  m.def(
      "mean_distance",
      [](const CausalModel& a, const CausalModel& b, double horizon, int iters,
         std::uint64_t seed, int threads) {
        MeanDistanceEstimate est;
        {
          py::gil_scoped_release release;
          est = MeanDistance(a, b, horizon, iters, seed, {.threads = threads});
        }
        py::dict out;
        out["mean"] = est.mean;
        out["variance"] = est.variance;
        out["draws"] = est.draws;
        out["resampled"] = est.resampled;
        out["skipped_types"] = est.skipped_types;
        return out;
      },
      py::arg("model_a"), py::arg("model_b"), py::arg("horizon"), py::arg("iters") = 32,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("edge_index", &EdgeIndex, py::arg("a"), py::arg("b"), py::arg("num_nodes"));

  m.def(
      "build_ctig",
      [](int num_nodes, int feature_dim, double nu0, double nu1, int noncausal, double tau,
         std::uint64_t seed) {
        CtigParams params;
        params.num_nodes = num_nodes;
        params.feature_dim = feature_dim;
        params.nu0 = nu0;
        params.nu1 = nu1;
        params.noncausal = noncausal;
        params.tau_bar = tau;
        params.seeds = CtigSeeds::FromMaster(seed);
        const CtigModel c = BuildCtigModel(params);
        py::dict out;
        out["model"] = c.model;
        out["h"] = c.matrices.h;
        out["theta_tilde"] = c.matrices.theta_tilde;
        out["theta"] = c.matrices.theta;
        out["mask"] = Eigen::MatrixXi(c.matrices.mask);
        out["noncausal_edges"] = c.noncausal_edges;
        std::vector<std::pair<int, int>> pairs;
        for (int k = 0; k < c.edges.size(); ++k) pairs.push_back(c.edges.Pair(k));
        out["edges"] = pairs;
        return out;
      },
      py::arg("num_nodes") = 5, py::arg("feature_dim") = 5, py::arg("nu0") = 100.0,
      py::arg("nu1") = 0.55, py::arg("noncausal") = 2, py::arg("tau_bar") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "negative_sample",
      [](const std::vector<std::pair<int, double>>& positives, int universe, const std::string& mode,
         int k, std::uint64_t seed) {
        double start = positives.empty() ? 0.0 : positives.front().second;
        double end = positives.empty() ? 0.0 : positives.back().second;
        return FromEvalSet(NegativeSample(ToSequence(positives, start, end + 1.0), universe,
                                          ParseSamplingMode(mode), k, seed));
      },
      py::arg("positives"), py::arg("universe_size"), py::arg("mode") = "transductive",
      py::arg("k") = 1, py::arg("seed") = 0,
      "Evaluation items (type, time, label) from positive (type, time) events.");

  m.def(
      "oracle_predict",
      [](const CausalModel& model, const std::vector<std::tuple<int, double, int>>& items,
         const std::vector<std::pair<int, double>>& history) {
        const double end = history.empty() ? 1.0 : history.back().second + 1.0;
        return OraclePredict(model, ToEvalSet(items), ToSequence(history, 0.0, end));
      },
      py::arg("model"), py::arg("items"), py::arg("history"));

  m.def(
      "compute_metric",
      [](const std::vector<double>& scores, const std::vector<int>& labels,
         const std::string& kind) { return ComputeMetric(scores, labels, ParseMetricKind(kind)); },
      py::arg("scores"), py::arg("labels"), py::arg("metric") = "accuracy");

  m.def("is_monotonic", &IsMonotonicClosedForm, py::arg("model"), py::arg("effect"),
        py::arg("cause"));
  m.def(
      "is_monotonic_brute_force",
      [](const CausalModel& model, int i, int j, int cap) {
        return IsMonotonicBruteForce(model, i, j, cap).verdict;
      },
      py::arg("model"), py::arg("effect"), py::arg("cause"), py::arg("max_parents") = 20);

  m.def(
      "estimate_pns",
      [](const CausalModel& model, const Realization& r, int i, int j) {
        const PnsEstimate e = EstimatePns(model, r, i, j);
        py::dict out;
        out["value"] = e.value;
        out["count_flag_1"] = e.count_flag_1;
        out["count_flag_0"] = e.count_flag_0;
        out["monotone"] = e.monotone ? py::object(py::bool_(*e.monotone)) : py::none();
        return out;
      },
      py::arg("model"), py::arg("realization"), py::arg("effect"), py::arg("cause"));

  m.def(
      "interventional_pns",
      [](const CausalModel& model, int i, int j, double horizon, std::uint64_t seed) {
        return InterventionalPnsOracle(model, i, j, horizon, seed).value;
      },
      py::arg("model"), py::arg("effect"), py::arg("cause"), py::arg("horizon"),
      py::arg("seed") = 0);

  m.def(
      "lowess",
      [](const std::vector<double>& x, const std::vector<double>& y, double fraction) {
        return Lowess(x, y, fraction);
      },
      py::arg("x"), py::arg("y"), py::arg("fraction") = kDefaultLowessFraction);

  m.def(
      "read_dataset", [](const std::string& path) { return DatasetDict(ReadDataset(path)); },
      py::arg("path"));

  m.def(
      "read_scores",
      [](const std::string& path, const std::vector<std::tuple<int, double, int>>& items) {
        return ReadScores(path, ToEvalSet(items));
      },
      py::arg("path"), py::arg("items"),
      "Scores aligned to `items` by (id, rendered timestamp).");

  m.def(
      "check_config",
      [](const std::string& text) {
        return Config::Check(nlohmann::json::parse(text));
      },
      py::arg("config_json"));

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_json, const std::string& out) {
        const Config config = Config::FromJson(nlohmann::json::parse(config_json));
        std::string rendered;
        {
          py::gil_scoped_release release;
          rendered = RunCommand(command, config, out).Render();
        }
        return rendered;
      },
      py::arg("command"), py::arg("config_json"), py::arg("out_dir"),
      "Runs a pipeline command and returns the report document as JSON text.");
}
