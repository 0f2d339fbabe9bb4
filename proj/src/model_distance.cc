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

#include "ctigbench/model_distance.h"

#include <cmath>
#include <limits>
#include <string>

#include "ctigbench/errors.h"
#include "ctigbench/parallel.h"
#include "ctigbench/random.h"
#include "ctigbench/stats.h"

namespace ctig {

bool CrossPredict(const CausalModel& model_b, int effect, double t,
                  const HistoryIndex& history, bool trigger_flag) {
  if (history.num_types() != model_b.num_types()) {
    throw ParameterError("CrossPredict: model has " +
                         std::to_string(model_b.num_types()) +
                         " types, history has " +
                         std::to_string(history.num_types()));
  }
  if (!trigger_flag) return false;
  const double tau = model_b.tau_bar();
  return ParentDrive(model_b, effect, [&](int j) {
           return history.Indicator(j, t, tau);
         }) >= 0.0;
}

bool CrossPredict(const CausalModel& model_b, int effect, double t,
                  const EventSequence& sequence_a, bool trigger_flag) {
  return CrossPredict(model_b, effect, t,
                      HistoryIndex(sequence_a, model_b.num_types()),
                      trigger_flag);
}

DirectedDistance ComputeDirectedDistance(
    const CausalModel& model_b, const CausalModel& model_a,
    const EventSequence& sequence_a,
    std::span<const TriggerStream> triggers_a) {
  const int n = model_a.num_types();
  if (model_b.num_types() != n) {
    throw ParameterError("directed distance: models cover " +
                         std::to_string(model_b.num_types()) + " and " +
                         std::to_string(n) + " types");
  }
  if (static_cast<int>(triggers_a.size()) != n) {
    throw ParameterError("directed distance: expected one trigger stream per type");
  }
  const HistoryIndex history(sequence_a, n);

  DirectedDistance out;
  out.per_type.assign(n, std::numeric_limits<double>::quiet_NaN());
  double total = 0.0;
  int contributing = 0;
  for (const TriggerStream& stream : triggers_a) {
    const int i = stream.event_type;
    if (i < 0 || i >= n) throw ParameterError("directed distance: bad stream type");
    if (stream.times.empty()) {
      out.skipped.push_back(i);
      continue;
    }
    // f_A(i, t) = 1{(i, t) in S^A}; both lists are sorted.
    const std::vector<double>& accepted = history.times(i);
    std::size_t cursor = 0;
    std::size_t disagreements = 0;
    for (const double t : stream.times) {
      while (cursor < accepted.size() && accepted[cursor] < t) ++cursor;
      const bool in_a = cursor < accepted.size() && accepted[cursor] == t;
      const bool in_b = CrossPredict(model_b, i, t, history, true);
      disagreements += in_a != in_b;
    }
    const double rate =
        static_cast<double>(disagreements) / static_cast<double>(stream.times.size());
    out.per_type[i] = rate;
    total += rate;
    ++contributing;
  }
  if (contributing == 0) {
    throw UndefinedDistanceError(
        "directed distance undefined: no event type has any trigger");
  }
  out.value = total / contributing;
  return out;
}

DistanceReport ComputeSymmetricDistance(const CausalModel& model_a,
                                        const CausalModel& model_b,
                                        const Realization& realization_a,
                                        const Realization& realization_b) {
  const DirectedDistance b_on_a = ComputeDirectedDistance(
      model_b, model_a, realization_a.accepted, realization_a.triggers);
  const DirectedDistance a_on_b = ComputeDirectedDistance(
      model_a, model_b, realization_b.accepted, realization_b.triggers);
  DistanceReport r;
  r.d_b_on_a = b_on_a.value;
  r.d_a_on_b = a_on_b.value;
  r.symmetric = std::sqrt(b_on_a.value * a_on_b.value);
  r.per_type_b_on_a = b_on_a.per_type;
  r.per_type_a_on_b = a_on_b.per_type;
  r.skipped_b_on_a = b_on_a.skipped;
  r.skipped_a_on_b = a_on_b.skipped;
  return r;
}

MeanDistanceEstimate MeanDistance(const CausalModel& model_a,
                                  const CausalModel& model_b, double horizon,
                                  int iters, std::uint64_t seed,
                                  const MeanDistanceOptions& options) {
  if (iters < 1) throw ParameterError("MeanDistance: iters must be >= 1");
  if (!(horizon > 0.0)) throw ParameterError("MeanDistance: horizon must be positive");
  if (model_a.num_types() != model_b.num_types()) {
    throw ParameterError("MeanDistance: models cover different type universes");
  }

  std::vector<double> draws(iters);
  std::vector<int> retries(iters, 0);
  std::vector<long long> skipped(iters, 0);
  ParallelFor(iters, options.threads, [&](std::size_t k) {
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t cell = DeriveSeed(seed, "mean_distance", k);
      const std::uint64_t s = attempt == 0 ? cell : DeriveSeed(cell, "retry", attempt);
      const Realization ra = GenerateSequence(model_a, horizon, DeriveSeed(s, "A"));
      const Realization rb = GenerateSequence(model_b, horizon, DeriveSeed(s, "B"));
      try {
        const DistanceReport r = ComputeSymmetricDistance(model_a, model_b, ra, rb);
        draws[k] = r.symmetric;
        skipped[k] = static_cast<long long>(r.skipped_a_on_b.size() + r.skipped_b_on_a.size());
        retries[k] = attempt;
        return;
      } catch (const UndefinedDistanceError&) {
        if (attempt + 1 >= options.max_attempts) throw;
      }
    }
  });

  MeanDistanceEstimate est;
  est.iters = iters;
  est.horizon = horizon;
  est.mean = Mean(draws);
  est.variance = SampleVariance(draws);
  for (const int r : retries) est.resampled += r;
  for (const long long s : skipped) est.skipped_types += s;
  est.draws = std::move(draws);
  return est;
}

std::vector<VarianceRow> VarianceDecayStudy(const CausalModel& model_a,
                                            const CausalModel& model_b,
                                            std::span<const VarianceCell> grid,
                                            int replications,
                                            std::uint64_t seed, int threads) {
  if (grid.empty()) throw ParameterError("VarianceDecayStudy: empty grid");
  if (replications < 30) {
    throw ParameterError("VarianceDecayStudy: need at least 30 replications");
  }
  std::vector<VarianceRow> rows;
  rows.reserve(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const VarianceCell& cell = grid[c];
    std::vector<double> estimates(replications);
    ParallelFor(replications, threads, [&](std::size_t r) {
      const std::uint64_t s = DeriveSeed(seed, "variance_study", c * 1000003 + r);
      estimates[r] =
          MeanDistance(model_a, model_b, cell.horizon, cell.iters, s, {.threads = 1})
              .mean;
    });
    VarianceRow row;
    row.horizon = cell.horizon;
    row.iters = cell.iters;
    row.effective_size = cell.horizon * cell.iters;
    row.mean = Mean(estimates);
    row.variance = SampleVariance(estimates);
    row.replications = replications;
    rows.push_back(row);
  }
  return rows;
}

double LogLogSlope(std::span<const VarianceRow> rows) {
  if (rows.size() < 2) throw ParameterError("LogLogSlope: need at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    if (!(r.variance > 0.0) || !(r.effective_size > 0.0)) {
      throw ParameterError("LogLogSlope: variances and sizes must be positive");
    }
    const double x = std::log(r.effective_size), y = std::log(r.variance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw ParameterError("LogLogSlope: sizes must differ");
  return (m * sxy - sx * sy) / denom;
}

}  // namespace ctig
