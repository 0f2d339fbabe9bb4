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

// Distance between two causal models measured by cross-prediction error.
//
// Model B predicts acceptance on a realization (S^A, Phi^A) of model A using
// B's parents, weights and window with history flags read from S^A. The
// directed distance d_B(S^A, Phi^A) averages, over event types, the rate at
// which those predictions disagree with what A actually accepted at its
// trigger times. The symmetric distance is the geometric mean of both
// directions, and the model distance is its expectation over independent
// paired realizations.

#ifndef CTIGBENCH_MODEL_DISTANCE_H_
#define CTIGBENCH_MODEL_DISTANCE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ctigbench/causal_model.h"

namespace ctig {

// trigger_flag * 1{sum_{j in P^B_i} theta^B(i, j) x'^A_j(t) >= 0}, with the
// window of model B. Throws ParameterError if `history` covers a different
// number of types than model B.
bool CrossPredict(const CausalModel& model_b, int effect, double t,
                  const HistoryIndex& history, bool trigger_flag);
bool CrossPredict(const CausalModel& model_b, int effect, double t,
                  const EventSequence& sequence_a, bool trigger_flag);

struct DirectedDistance {
  double value = 0.0;
  // Disagreement rate per type; NaN for types without triggers.
  std::vector<double> per_type;
  // Types with no triggers, excluded from the average.
  std::vector<int> skipped;
};

// d_B(S^A, Phi^A). Types whose trigger stream is empty are skipped and the
// mean is taken over the remaining ones. Throws UndefinedDistanceError when
// every stream is empty and ParameterError when the type universes differ.
DirectedDistance ComputeDirectedDistance(const CausalModel& model_b,
                                         const CausalModel& model_a,
                                         const EventSequence& sequence_a,
                                         std::span<const TriggerStream> triggers_a);

struct DistanceReport {
  double d_b_on_a = 0.0;  // error of B on A's realization
  double d_a_on_b = 0.0;  // error of A on B's realization
  double symmetric = 0.0;
  std::vector<double> per_type_b_on_a;
  std::vector<double> per_type_a_on_b;
  std::vector<int> skipped_b_on_a;
  std::vector<int> skipped_a_on_b;
};

// sqrt(d_B(S^A, Phi^A) * d_A(S^B, Phi^B)).
DistanceReport ComputeSymmetricDistance(const CausalModel& model_a,
                                        const CausalModel& model_b,
                                        const Realization& realization_a,
                                        const Realization& realization_b);

struct MeanDistanceEstimate {
  double mean = 0.0;
  double variance = 0.0;  // sample variance of the per-iteration draws
  int iters = 0;
  double horizon = 0.0;
  int resampled = 0;  // iterations redrawn because a distance was undefined
  // Types left out of a directed distance because they never triggered,
  // summed over both directions and all iterations.
  long long skipped_types = 0;
  std::vector<double> draws;
};

struct MeanDistanceOptions {
  int threads = 0;  // 0: DefaultThreadCount()
  int max_attempts = 64;
};

// Sample mean of the symmetric distance over `iters` independent paired
// realizations of length `horizon`. An iteration whose distance is
// undefined is redrawn with a fresh seed.
MeanDistanceEstimate MeanDistance(const CausalModel& model_a,
                                  const CausalModel& model_b, double horizon,
                                  int iters, std::uint64_t seed,
                                  const MeanDistanceOptions& options = {});

struct VarianceCell {
  double horizon = 0.0;
  int iters = 0;
};

struct VarianceRow {
  double horizon = 0.0;
  int iters = 0;
  double effective_size = 0.0;  // horizon * iters
  double mean = 0.0;            // average of the replicated estimates
  double variance = 0.0;        // empirical variance across replications
  int replications = 0;
};

// For each grid cell, replicates MeanDistance `replications` times with
// independent seeds and reports the empirical variance of the estimate.
// Throws ParameterError for an empty grid or fewer than 30 replications.
std::vector<VarianceRow> VarianceDecayStudy(const CausalModel& model_a,
                                            const CausalModel& model_b,
                                            std::span<const VarianceCell> grid,
                                            int replications,
                                            std::uint64_t seed,
                                            int threads = 0);

// Least-squares slope of log(variance) against log(effective_size). Rows
// with zero variance are rejected with ParameterError.
double LogLogSlope(std::span<const VarianceRow> rows);

}  // namespace ctig

#endif  // CTIGBENCH_MODEL_DISTANCE_H_
