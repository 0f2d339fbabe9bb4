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


// Counterfactual evaluation of event predictors.
//
// A test window of a causal event sequence is turned into a labelled
// evaluation set by pairing each observed event with negatives that share
// its timestamp. A predictor is scored on the original window and on a
// distorted one (a sequence from a shifted model, or a timestamp-shuffled
// copy); the change in error is the performance gap.

#ifndef CTIGBENCH_COUNTERFACTUAL_H_
#define CTIGBENCH_COUNTERFACTUAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctigbench/causal_model.h"
#include "ctigbench/stats.h"

namespace ctig {

// Events with time in [a, b), order preserved; the result spans [a, b).
// Throws ParameterError unless 0 <= a < b.
EventSequence Restrict(const EventSequence& sequence, double a, double b);

enum class SamplingMode { kGlobal, kTransductive };
std::string_view ToString(SamplingMode mode);
SamplingMode ParseSamplingMode(std::string_view text);

struct EvalItem {
  int type = 0;
  double time = 0.0;
  int label = 0;
  bool operator==(const EvalItem&) const = default;
};

struct EvaluationSet {
  std::vector<EvalItem> items;
  double window_begin = 0.0;
  double window_end = 0.0;
  SamplingMode mode = SamplingMode::kTransductive;
  std::vector<int> Labels() const;
};

// Each positive (i, t) is followed by k negatives (j, t), j != i. Global
// mode draws j from all `universe_size` types; transductive mode draws from
// the types present in `positives`. The window is the positives' span.
// Throws ParameterError for universe_size < 2 or k < 1, and SamplingError in
// transductive mode when fewer than two types are observed.
EvaluationSet NegativeSample(const EventSequence& positives, int universe_size,
                             SamplingMode mode, int k, std::uint64_t seed);

// Score 1{sum_j theta(i, j) x'_j(t) >= 0} per item with flags read from
// `history`; the trigger factor is taken as 1.
std::vector<double> OraclePredict(const CausalModel& model,
                                  const EvaluationSet& eval,
                                  const EventSequence& history);

enum class MetricKind { kAccuracy, kAveragePrecision, kAuc };
std::string_view ToString(MetricKind kind);
MetricKind ParseMetricKind(std::string_view text);

// Accuracy thresholds scores at 0.5. AP is the mean precision at the rank of
// each positive with ties kept in input order. AUC is the Mann-Whitney
// statistic with half credit for ties. AP and AUC throw MetricUndefinedError
// when only one class is present.
double ComputeMetric(std::span<const double> scores, std::span<const int> labels,
                     MetricKind kind);

struct GapRecord {
  double d_star_0 = 0.0;
  double d_star_dagger = 0.0;
  double delta = 0.0;
  std::optional<double> d_bar;
  MetricKind metric = MetricKind::kAccuracy;
};

// delta = d_star_dagger - d_star_0. Throws ParameterError outside [0, 1].
GapRecord PerformanceGap(double d_star_0, double d_star_dagger,
                         MetricKind metric = MetricKind::kAccuracy,
                         std::optional<double> d_bar = std::nullopt);

struct GapProbability {
  double probability = 0.0;
  int count = 0;
};

// Frequency of delta > 0 among records with d_star_0 < delta_star and, when
// beta is given, d_bar > beta (records without d_bar are then excluded).
// Throws UndefinedProbabilityError when nothing survives the filter.
GapProbability ComputeGapProbability(std::span<const GapRecord> records,
                                     double delta_star,
                                     std::optional<double> beta = std::nullopt);

// Randomly reassigns the event times among the events, then re-sorts.
EventSequence ShuffleTimestamps(const EventSequence& sequence, std::uint64_t seed);

// Triggers restricted to [a, b) together with the full accepted history.
// Useful for window-level directed distances.
std::vector<TriggerStream> RestrictTriggers(std::span<const TriggerStream> triggers,
                                            double a, double b);

// x reflected into [lo, hi].
double Reflect(double x, double lo, double hi);

// Random-walk perturbation on the model's own support: every nonzero weight
// moves by scale * N(0, 1) and every rate by scale * (hi - lo) / 2 * N(0, 1),
// each reflected back into [-1, 1] and the rate range. The reflected step has
// a symmetric kernel and keeps uniform draws uniform, so a random model and
// its perturbation are an exchangeable pair. Large scales approach an
// independent redraw of the weights on the same support.
CausalModel PerturbModel(const CausalModel& model, double scale, std::uint64_t seed,
                         const LambdaRange& lambda_range = {});

struct CounterfactualOutcome {
  double y_x = 0.0;        // metric on the original test set
  double y_x_prime = 0.0;  // metric on the distorted test set
  double train_begin = 0.0, train_end = 0.0;
  double test_begin = 0.0, test_end = 0.0;
};

struct ExperimentConfig {
  double horizon = 1000.0;
  std::optional<double> tau_split;  // default horizon / 2
  int negatives_per_positive = 1;
  SamplingMode mode = SamplingMode::kTransductive;
  MetricKind metric = MetricKind::kAccuracy;
  int distance_iters = 32;  // 0 skips the model distance
  int threads = 1;
  double Split() const { return tau_split.value_or(horizon / 2.0); }
  void Validate() const;
};

// Everything an external predictor needs: the generated data and both
// evaluation sets over the test window.
struct ExperimentAData {
  Realization original;     // from model_0
  Realization distorted;    // from model_dagger
  EvaluationSet eval_x;
  EvaluationSet eval_x_prime;
  double tau_split = 0.0;
  std::optional<double> d_bar;
};

ExperimentAData PrepareExperimentA(const CausalModel& model_0,
                                   const CausalModel& model_dagger,
                                   const ExperimentConfig& config,
                                   std::uint64_t seed);

struct ExperimentAResult {
  CounterfactualOutcome outcome;
  GapRecord gap;
};

// Gap from externally produced scores aligned with the two evaluation sets.
ExperimentAResult EvaluateExperimentA(const ExperimentAData& data,
                                      std::span<const double> scores_x,
                                      std::span<const double> scores_x_prime,
                                      MetricKind metric);

// Oracle run: `predictor` scores both test sets with each set's own
// generating sequence as history.
ExperimentAResult RunExperimentA(const CausalModel& model_0,
                                 const CausalModel& model_dagger,
                                 const CausalModel& predictor,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed);

struct ExperimentBResult {
  double y_x = 0.0;
  std::vector<double> y_x_prime;  // one per shuffled copy
  double original_distance = 0.0;
  std::vector<double> shuffle_distances;
  NormalInterval shuffle_distance_interval;
  double test_begin = 0.0, test_end = 0.0;
};

struct ExperimentBData {
  Realization original;
  EventSequence train;
  EvaluationSet eval_x;
  std::vector<EventSequence> shuffled_tests;
  std::vector<EvaluationSet> eval_shuffled;
};

// Shuffles the test window only; the train window stays intact. Throws
// ParameterError when the test window is empty or n_shuffles < 1.
ExperimentBData PrepareExperimentB(const CausalModel& model_0,
                                   const ExperimentConfig& config,
                                   int n_shuffles, std::uint64_t seed);

// Directed distance of model_0 on `history` using the evaluation set's
// timestamps, per type, as stand-in triggers.
double ProxyDistance(const CausalModel& model_0, const EventSequence& history,
                     const EvaluationSet& eval);

ExperimentBResult RunExperimentB(const CausalModel& model_0,
                                 const ExperimentConfig& config, int n_shuffles,
                                 std::uint64_t seed);

// Study behind the gap-probability curves. For each pair, C_0 is a random
// model, C_dagger = PerturbModel(C_0) with scale drawn from
// [0, dagger_scale_max] and the predictor C_star = PerturbModel(C_0) with
// scale from [0, star_scale_max]. d_star values are directed distances of
// C_star on the test half [T/2, T) of each realization, with triggers known;
// d_bar is MeanDistance(C_0, C_dagger).
struct HypothesisConfig {
  int num_types = 7;
  double edge_probability = 0.5;
  double horizon = 1000.0;
  int pairs = 300;
  double star_scale_max = 2.0;
  double dagger_scale_max = 1.0;
  int distance_iters = 32;
  int threads = 1;
};

std::vector<GapRecord> HypothesisStudy(const HypothesisConfig& config,
                                       std::uint64_t seed);

struct CurvePoint {
  double threshold = 0.0;
  double probability = 0.0;
  int count = 0;
  bool defined = false;  // false when no record survives the filter
};

struct GridCell {
  double beta = 0.0;
  double delta_star = 0.0;
  double probability = 0.0;
  int count = 0;
  bool defined = false;
};

struct GapCurves {
  double delta_star = 0.2;
  std::vector<CurvePoint> beta_curve;   // P(delta > 0 | d_star_0 < delta_star, d_bar > beta)
  std::vector<CurvePoint> delta_curve;  // P(delta > 0 | d_star_0 < x)
  std::vector<GridCell> grid;           // every (beta, delta_star) pair of the two grids
};

// Beta grid: 0 followed by the deciles of d_bar over records with
// d_star_0 < delta_star (beta_points values in total). delta_star grid:
// delta_points evenly spaced values ending at 1.
GapCurves SummarizeGaps(std::span<const GapRecord> records, double delta_star = 0.2,
                        int beta_points = 10, int delta_points = 20);

}  // namespace ctig

#endif  // CTIGBENCH_COUNTERFACTUAL_H_
