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

// The causal event-sequence model.
//
// Each event type i has a Poisson trigger stream with intensity lambda_i. A
// trigger of type i at time t is accepted iff
//
//   sum_{j in P_i} theta(i, j) * x'_j(t) >= 0,
//
// where P_i = {j : theta(i, j) != 0} are the structural parents of i and
// x'_j(t) indicates an accepted event of type j in the window [t - tau, t).
// The window excludes t itself, so events sharing a timestamp never see each
// other.

#ifndef CTIGBENCH_CAUSAL_MODEL_H_
#define CTIGBENCH_CAUSAL_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ctigbench/point_process.h"

namespace ctig {

// Immutable (lambda, theta, tau) triple. Row i of theta holds the influence
// of every cause j on effect i.
class CausalModel {
 public:
  // Throws ParameterError unless theta is n x n with n = lambdas.size() >= 1,
  // every lambda is positive, every |theta(i, j)| <= 1 and tau_bar > 0.
  CausalModel(std::vector<double> lambdas, Eigen::MatrixXd theta,
              double tau_bar);

  int num_types() const { return static_cast<int>(lambdas_.size()); }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double lambda(int i) const { return lambdas_[i]; }
  const Eigen::MatrixXd& theta() const { return theta_; }
  double theta(int effect, int cause) const { return theta_(effect, cause); }
  double tau_bar() const { return tau_bar_; }

  // Structural parents of `effect`, ascending.
  std::span<const int> parents(int effect) const { return parents_[effect]; }

  // A(i, j) = 1{theta(i, j) != 0}.
  Eigen::MatrixXi Adjacency() const;

  // Same lambdas and tau, different influence matrix.
  CausalModel WithTheta(Eigen::MatrixXd theta) const;

 private:
  std::vector<double> lambdas_;
  Eigen::MatrixXd theta_;
  double tau_bar_;
  std::vector<std::vector<int>> parents_;
};

// A time-ordered event list on the window [start, horizon).
struct EventSequence {
  std::vector<Event> events;
  double start = 0.0;
  double horizon = 0.0;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

// Per-type sorted index over accepted event times answering window queries
// in logarithmic time. Supports appending in time order, which is how the
// generator grows the history while scanning the trigger timeline.
class HistoryIndex {
 public:
  explicit HistoryIndex(int num_types);
  // Throws ContractViolation if an event type is outside [0, num_types).
  HistoryIndex(const EventSequence& sequence, int num_types);

  int num_types() const { return static_cast<int>(times_.size()); }

  // Requires time >= the last appended time of the same type.
  void Append(int type, double time);

  // 1 iff some event of `type` lies in [t - window, t).
  bool Indicator(int type, double t, double window) const;

  // Sorted times of one type.
  const std::vector<double>& times(int type) const { return times_[type]; }

 private:
  std::vector<std::vector<double>> times_;
};

// Convenience wrapper; builds an index for a single query.
bool HistoryIndicator(const EventSequence& sequence, int type, double t,
                      double tau_bar);

// Weighted vote sum_{j in P_i} theta(i, j) * flag(j), summed over parents in
// ascending order. `flag` is any callable int -> bool.
template <typename FlagFn>
double ParentDrive(const CausalModel& model, int effect, FlagFn&& flag) {
  double sum = 0.0;
  for (const int j : model.parents(effect)) {
    if (flag(j)) sum += model.theta(effect, j);
  }
  return sum;
}

// Structural equation for one effect. `history_flags` must contain every
// structural parent; a missing parent throws ContractViolation.
bool SemEval(const CausalModel& model, int effect, bool trigger,
             const std::map<int, bool>& history_flags);

// Forces x'_cause to `value` whenever the structural equation of `effect`
// is evaluated; every other flag is still read from the evolving history.
struct FlagIntervention {
  int effect = 0;
  int cause = 0;
  bool value = false;
};

// Triggers and accepted events from one run of the generator.
struct Realization {
  std::vector<TriggerStream> triggers;  // one per type, index == type
  EventSequence accepted;

  std::size_t NumTriggers() const;
};

// Samples per-type trigger streams, merges them, and scans the timeline in
// order, accepting each trigger whose structural equation fires given the
// previously accepted events. Deterministic in (model, horizon, seed).
Realization GenerateSequence(const CausalModel& model, double horizon,
                             std::uint64_t seed);

// Same trigger streams as GenerateSequence(model, horizon, seed), with the
// given flag forced at every evaluation of intervention.effect.
Realization GenerateSequence(const CausalModel& model, double horizon,
                             std::uint64_t seed,
                             const FlagIntervention& intervention);

// Re-evaluates the structural equation at every trigger against a fixed,
// already complete history `accepted` (only events strictly before each
// trigger can contribute). For a generator output this reproduces
// `accepted` exactly.
EventSequence ReplayAcceptance(const CausalModel& model,
                               std::span<const TriggerStream> triggers,
                               const EventSequence& accepted);

struct ErdosRenyi {
  double p = 0.5;
};
struct IdentityGraph {};
struct ExplicitGraph {
  Eigen::MatrixXi matrix;
};
using AdjacencyDraw = std::variant<ErdosRenyi, IdentityGraph, ExplicitGraph>;

struct LambdaRange {
  double lo = 0.5;
  double hi = 2.0;
};

// Draws A from `adjacency`, lambda_i ~ U(lo, hi) and, wherever A(i, j) = 1,
// theta(i, j) ~ U[-1, 1] redrawn until nonzero; every other entry is 0.
CausalModel SampleRandomModel(int n, const AdjacencyDraw& adjacency,
                              LambdaRange lambda_range, double tau_bar,
                              std::uint64_t seed);

// Adjacency draw used by SampleRandomModel.
Eigen::MatrixXi SampleAdjacency(int n, const AdjacencyDraw& adjacency,
                                std::uint64_t seed);

// Dataset sanity gate: true iff at least one trigger was rejected. A run in
// which every trigger fires carries no causal signal.
bool PassesDegeneracyCheck(std::span<const TriggerStream> triggers,
                           const EventSequence& accepted);
bool PassesDegeneracyCheck(const Realization& realization);

}  // namespace ctig

#endif  // CTIGBENCH_CAUSAL_MODEL_H_
