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

#include "ctigbench/causal_model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "ctigbench/errors.h"
#include "ctigbench/random.h"

namespace ctig {

CausalModel::CausalModel(std::vector<double> lambdas, Eigen::MatrixXd theta,
                         double tau_bar)
    : lambdas_(std::move(lambdas)), theta_(std::move(theta)), tau_bar_(tau_bar) {
  const auto n = static_cast<Eigen::Index>(lambdas_.size());
  if (n < 1) throw ParameterError("CausalModel: need at least one event type");
  if (theta_.rows() != n || theta_.cols() != n) {
    throw ParameterError("CausalModel: theta must be " + std::to_string(n) +
                         "x" + std::to_string(n));
  }
  for (const double l : lambdas_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw ParameterError("CausalModel: intensities must be positive");
    }
  }
  if (!(tau_bar_ > 0.0) || !std::isfinite(tau_bar_)) {
    throw ParameterError("CausalModel: tau_bar must be positive");
  }
  parents_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = theta_(i, j);
      if (!(std::abs(v) <= 1.0)) {
        throw ParameterError("CausalModel: |theta(" + std::to_string(i) + "," +
                             std::to_string(j) + ")| must be <= 1");
      }
      if (v != 0.0) parents_[i].push_back(static_cast<int>(j));
    }
  }
}

Eigen::MatrixXi CausalModel::Adjacency() const {
  return (theta_.array() != 0.0).cast<int>().matrix();
}

CausalModel CausalModel::WithTheta(Eigen::MatrixXd theta) const {
  return CausalModel(lambdas_, std::move(theta), tau_bar_);
}

HistoryIndex::HistoryIndex(int num_types) : times_(num_types) {}

HistoryIndex::HistoryIndex(const EventSequence& sequence, int num_types)
    : times_(num_types) {
  for (const Event& e : sequence.events) {
    if (e.type < 0 || e.type >= num_types) {
      throw ContractViolation("event type " + std::to_string(e.type) +
                              " outside universe of " +
                              std::to_string(num_types) + " types");
    }
    times_[e.type].push_back(e.time);
  }
  for (auto& t : times_) {
    if (!std::is_sorted(t.begin(), t.end())) std::sort(t.begin(), t.end());
  }
}

void HistoryIndex::Append(int type, double time) {
  auto& t = times_[type];
  if (!t.empty() && time < t.back()) {
    throw ContractViolation("HistoryIndex::Append: out-of-order time");
  }
  t.push_back(time);
}

bool HistoryIndex::Indicator(int type, double t, double window) const {
  const auto& times = times_[type];
  // Last event strictly before t.
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return false;
  return *(it - 1) >= t - window;
}

bool HistoryIndicator(const EventSequence& sequence, int type, double t,
                      double tau_bar) {
  int num_types = type + 1;
  for (const Event& e : sequence.events) num_types = std::max(num_types, e.type + 1);
  return HistoryIndex(sequence, num_types).Indicator(type, t, tau_bar);
}

bool SemEval(const CausalModel& model, int effect, bool trigger,
             const std::map<int, bool>& history_flags) {
  if (effect < 0 || effect >= model.num_types()) {
    throw ParameterError("SemEval: effect type out of range");
  }
  for (const int j : model.parents(effect)) {
    if (!history_flags.contains(j)) {
      throw ContractViolation("SemEval: missing history flag for parent " +
                              std::to_string(j) + " of type " +
                              std::to_string(effect));
    }
  }
  if (!trigger) return false;
  return ParentDrive(model, effect,
                     [&](int j) { return history_flags.at(j); }) >= 0.0;
}

std::size_t Realization::NumTriggers() const {
  std::size_t total = 0;
  for (const auto& s : triggers) total += s.times.size();
  return total;
}

namespace {

std::vector<TriggerStream> SampleTriggers(const CausalModel& model,
                                          double horizon, std::uint64_t seed) {
  std::vector<TriggerStream> triggers;
  triggers.reserve(model.num_types());
  for (int i = 0; i < model.num_types(); ++i) {
    triggers.push_back(SamplePoissonProcess(
        model.lambda(i), horizon, DeriveSeed(seed, "triggers", i), i));
  }
  return triggers;
}

Realization Generate(const CausalModel& model, double horizon,
                     std::uint64_t seed, const FlagIntervention* intervention) {
  Realization out;
  out.triggers = SampleTriggers(model, horizon, seed);
  out.accepted.start = 0.0;
  out.accepted.horizon = horizon;
  const Timeline timeline = MergeTimeline(out.triggers);
  out.accepted.events.reserve(timeline.size());

  HistoryIndex history(model.num_types());
  const double tau = model.tau_bar();
  for (const Event& trigger : timeline) {
    const int i = trigger.type;
    const double t = trigger.time;
    const bool forced = intervention != nullptr && intervention->effect == i;
    const double drive = ParentDrive(model, i, [&](int j) {
      if (forced && j == intervention->cause) return intervention->value;
      return history.Indicator(j, t, tau);
    });
    if (drive >= 0.0) {
      out.accepted.events.push_back(trigger);
      history.Append(i, t);
    }
  }
  return out;
}

}  // namespace

Realization GenerateSequence(const CausalModel& model, double horizon,
                             std::uint64_t seed) {
  return Generate(model, horizon, seed, nullptr);
}

Realization GenerateSequence(const CausalModel& model, double horizon,
                             std::uint64_t seed,
                             const FlagIntervention& intervention) {
  const int n = model.num_types();
  if (intervention.effect < 0 || intervention.effect >= n ||
      intervention.cause < 0 || intervention.cause >= n) {
    throw ParameterError("GenerateSequence: intervention types out of range");
  }
  return Generate(model, horizon, seed, &intervention);
}

EventSequence ReplayAcceptance(const CausalModel& model,
                               std::span<const TriggerStream> triggers,
                               const EventSequence& accepted) {
  const HistoryIndex history(accepted, model.num_types());
  const Timeline timeline = MergeTimeline(triggers);
  EventSequence out;
  out.start = accepted.start;
  out.horizon = accepted.horizon;
  const double tau = model.tau_bar();
  for (const Event& trigger : timeline) {
    const double drive = ParentDrive(model, trigger.type, [&](int j) {
      return history.Indicator(j, trigger.time, tau);
    });
    if (drive >= 0.0) out.events.push_back(trigger);
  }
  return out;
}

Eigen::MatrixXi SampleAdjacency(int n, const AdjacencyDraw& adjacency,
                                std::uint64_t seed) {
  if (n < 1) throw ParameterError("SampleAdjacency: n must be >= 1");
  return std::visit(
      [&](const auto& params) -> Eigen::MatrixXi {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, ErdosRenyi>) {
          if (!(params.p >= 0.0 && params.p <= 1.0)) {
            throw ParameterError("erdos_renyi: p must lie in [0, 1]");
          }
          Rng rng(seed);
          Eigen::MatrixXi a(n, n);
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a(i, j) = rng.Bernoulli(params.p) ? 1 : 0;
          }
          return a;
        } else if constexpr (std::is_same_v<T, IdentityGraph>) {
          return Eigen::MatrixXi::Identity(n, n);
        } else {
          if (params.matrix.rows() != n || params.matrix.cols() != n) {
            throw ParameterError("explicit adjacency must be n x n");
          }
          if (((params.matrix.array() != 0) && (params.matrix.array() != 1)).any()) {
            throw ParameterError("explicit adjacency must be binary");
          }
          return params.matrix;
        }
      },
      adjacency);
}

CausalModel SampleRandomModel(int n, const AdjacencyDraw& adjacency,
                              LambdaRange lambda_range, double tau_bar,
                              std::uint64_t seed) {
  if (n < 1) throw ParameterError("SampleRandomModel: n must be >= 1");
  if (!(lambda_range.lo > 0.0) || !(lambda_range.lo <= lambda_range.hi) ||
      !std::isfinite(lambda_range.hi)) {
    throw ParameterError("SampleRandomModel: need 0 < lo <= hi");
  }
  const Eigen::MatrixXi a =
      SampleAdjacency(n, adjacency, DeriveSeed(seed, "adjacency"));

  Rng lambda_rng(DeriveSeed(seed, "lambdas"));
  std::vector<double> lambdas(n);
  for (double& l : lambdas) l = lambda_rng.Uniform(lambda_range.lo, lambda_range.hi);

  Rng theta_rng(DeriveSeed(seed, "theta"));
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a(i, j) == 0) continue;
      double v = 0.0;
      while (v == 0.0) v = theta_rng.Uniform(-1.0, 1.0);
      theta(i, j) = v;
    }
  }
  return CausalModel(std::move(lambdas), std::move(theta), tau_bar);
}

bool PassesDegeneracyCheck(std::span<const TriggerStream> triggers,
                           const EventSequence& accepted) {
  std::size_t total = 0;
  for (const auto& s : triggers) total += s.times.size();
  return accepted.size() != total;
}

bool PassesDegeneracyCheck(const Realization& realization) {
  return PassesDegeneracyCheck(realization.triggers, realization.accepted);
}

}  // namespace ctig
