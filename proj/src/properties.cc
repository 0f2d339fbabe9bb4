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


#include "ctigbench/properties.h"

#include <algorithm>
#include <queue>
#include <sstream>

#include "ctigbench/errors.h"
#include "ctigbench/random.h"

namespace ctig {

namespace {

void RequireParent(const CausalModel& model, int effect, int cause) {
  const int n = model.num_types();
  if (effect < 0 || effect >= n || cause < 0 || cause >= n) {
    throw ParameterError("type index out of range");
  }
  if (model.theta(effect, cause) == 0.0) {
    throw ParameterError("type " + std::to_string(cause) + " is not a parent of type " +
                         std::to_string(effect));
  }
}

}  // namespace

bool IsMonotonicClosedForm(const CausalModel& model, int effect, int cause) {
  RequireParent(model, effect, cause);
  const double w = model.theta(effect, cause);
  return w >= 0.0 && w <= 1.0;
}

PropertyVerdict IsMonotonicBruteForce(const CausalModel& model, int effect, int cause,
                                      int max_parents) {
  RequireParent(model, effect, cause);
  const auto parents = model.parents(effect);
  if (static_cast<int>(parents.size()) > max_parents) {
    throw CapacityError("monotonicity enumeration: " + std::to_string(parents.size()) +
                        " parents exceed the cap of " + std::to_string(max_parents));
  }
  std::vector<int> others;
  for (const int k : parents) {
    if (k != cause) others.push_back(k);
  }
  const double w = model.theta(effect, cause);
  PropertyVerdict v;
  v.property = "monotonic";
  v.effect = effect;
  v.cause = cause;
  v.verdict = true;
  const std::uint64_t subsets = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    double sum = 0.0;
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (mask >> b & 1) sum += model.theta(effect, others[b]);
    }
    if (sum >= 0.0 && w + sum < 0.0) {
      v.verdict = false;
      std::vector<int> c;
      for (std::size_t b = 0; b < others.size(); ++b) {
        if (mask >> b & 1) c.push_back(others[b]);
      }
      v.witness = std::move(c);
      break;
    }
  }
  v.evidence = "checked " + std::to_string(subsets) + " subsets";
  return v;
}

bool IsMarkovian(const CausalModel& model) {
  const int n = model.num_types();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && model.theta(i, j) != 0.0) return false;
    }
  }
  return true;
}

std::vector<PropertyVerdict> StructuralChecks(const CausalModel& model) {
  const int n = model.num_types();
  // Node ids: U_i = i, X'_j = n + j, X_i = 2n + i.
  const int nodes = 3 * n;
  std::vector<std::vector<int>> out_edges(nodes);
  std::vector<int> in_degree(nodes, 0);
  std::size_t edges = 0;
  auto add = [&](int from, int to) {
    out_edges[from].push_back(to);
    ++in_degree[to];
    ++edges;
  };
  for (int i = 0; i < n; ++i) {
    add(i, 2 * n + i);
    for (const int j : model.parents(i)) add(n + j, 2 * n + i);
  }

  bool into_x_only = true;
  for (int from = 0; from < nodes; ++from) {
    for (const int to : out_edges[from]) {
      into_x_only &= from < 2 * n && to >= 2 * n;
    }
  }
  // Kahn's algorithm: acyclic iff every node gets popped.
  std::vector<int> indeg = in_degree;
  std::queue<int> ready;
  for (int v = 0; v < nodes; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  int popped = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    ++popped;
    for (const int to : out_edges[v]) {
      if (--indeg[to] == 0) ready.push(to);
    }
  }
  bool exogenous = true;
  for (int j = 0; j < n; ++j) exogenous &= in_degree[n + j] == 0;

  std::ostringstream ev;
  ev << nodes << " nodes, " << edges << " edges";
  PropertyVerdict acyclic;
  acyclic.property = "acyclic";
  acyclic.verdict = into_x_only && popped == nodes;
  acyclic.evidence =
      ev.str() + ", topological order covers " + std::to_string(popped) + " nodes";
  PropertyVerdict exo;
  exo.property = "exogenous_history";
  exo.verdict = exogenous;
  exo.evidence = ev.str() + ", history nodes have in-degree 0";
  return {acyclic, exo};
}

PnsEstimate EstimatePns(const EventSequence& sequence, const TriggerStream& triggers,
                        int effect, int cause, double tau_bar) {
  if (triggers.event_type != effect) {
    throw ParameterError("PNS: trigger stream belongs to another type");
  }
  if (!(tau_bar > 0.0)) throw ParameterError("PNS: window must be positive");
  int n = std::max(effect, cause) + 1;
  for (const Event& e : sequence.events) n = std::max(n, e.type + 1);
  const HistoryIndex history(sequence, n);
  const std::vector<double>& accepted = history.times(effect);
  PnsEstimate out;
  std::size_t cursor = 0;
  for (const double t : triggers.times) {
    while (cursor < accepted.size() && accepted[cursor] < t) ++cursor;
    const bool x = cursor < accepted.size() && accepted[cursor] == t;
    if (history.Indicator(cause, t, tau_bar)) {
      ++out.count_flag_1;
      out.accepted_flag_1 += x;
    } else {
      ++out.count_flag_0;
      out.accepted_flag_0 += x;
    }
  }
  if (out.count_flag_1 == 0 || out.count_flag_0 == 0) {
    throw EstimationError(std::string("PNS: empty conditioning cell X'_") +
                          std::to_string(cause) + " = " +
                          (out.count_flag_1 == 0 ? "1" : "0"));
  }
  out.value = static_cast<double>(out.accepted_flag_1) / out.count_flag_1 -
              static_cast<double>(out.accepted_flag_0) / out.count_flag_0;
  return out;
}

PnsEstimate EstimatePns(const CausalModel& model, const Realization& realization,
                        int effect, int cause) {
  if (effect < 0 || effect >= model.num_types()) throw ParameterError("PNS: bad effect");
  PnsEstimate out = EstimatePns(realization.accepted, realization.triggers[effect], effect,
                                cause, model.tau_bar());
  if (model.theta(effect, cause) != 0.0) {
    out.monotone = IsMonotonicClosedForm(model, effect, cause);
  }
  return out;
}

InterventionalPns InterventionalPnsOracle(const CausalModel& model, int effect, int cause,
                                          double horizon, std::uint64_t seed) {
  const int n = model.num_types();
  if (effect < 0 || effect >= n || cause < 0 || cause >= n) {
    throw ParameterError("PNS oracle: type index out of range");
  }
  const Realization on = GenerateSequence(model, horizon, seed, {effect, cause, true});
  const Realization off = GenerateSequence(model, horizon, seed, {effect, cause, false});
  const auto count = [effect](const EventSequence& s) {
    return std::count_if(s.events.begin(), s.events.end(),
                         [effect](const Event& e) { return e.type == effect; });
  };
  InterventionalPns out;
  out.triggers = static_cast<long long>(on.triggers[effect].times.size());
  if (out.triggers == 0) throw EstimationError("PNS oracle: the effect type never triggers");
  out.p_do_1 = static_cast<double>(count(on.accepted)) / out.triggers;
  out.p_do_0 = static_cast<double>(count(off.accepted)) / out.triggers;
  out.value = out.p_do_1 - out.p_do_0;
  return out;
}

CausalModel SampleExogenousPairModel(int num_parents, std::uint64_t seed,
                                     const LambdaRange& lambdas, double tau_bar) {
  if (num_parents < 1) throw ParameterError("need at least one parent");
  if (!(lambdas.lo > 0.0 && lambdas.lo < lambdas.hi)) {
    throw ParameterError("bad rate range");
  }
  const int n = num_parents + 1;
  Rng rng(seed);
  std::vector<double> rates(n);
  for (double& r : rates) r = rng.Uniform(lambdas.lo, lambdas.hi);
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
  theta(0, 1) = 1.0 - rng.Uniform();  // (0, 1]
  for (int k = 2; k < n; ++k) {
    double w = 0.0;
    while (w == 0.0) w = rng.Uniform(-1.0, 1.0);
    theta(0, k) = w;
  }
  return CausalModel(std::move(rates), theta, tau_bar);
}

}  // namespace ctig
