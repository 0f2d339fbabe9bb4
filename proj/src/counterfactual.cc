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


#include "ctigbench/counterfactual.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ctigbench/errors.h"
#include "ctigbench/model_distance.h"
#include "ctigbench/parallel.h"
#include "ctigbench/random.h"

namespace ctig {

namespace {

EventSequence TestWindow(const EventSequence& full, double a, double b) {
  EventSequence test = Restrict(full, a, b);
  if (test.empty()) {
    std::ostringstream msg;
    msg << "degenerate test window [" << a << ", " << b << "): no events";
    throw ParameterError(msg.str());
  }
  return test;
}

EventSequence Concatenate(const EventSequence& head, const EventSequence& tail) {
  EventSequence out;
  out.start = head.start;
  out.horizon = tail.horizon;
  out.events = head.events;
  out.events.insert(out.events.end(), tail.events.begin(), tail.events.end());
  return out;
}

}  // namespace

EventSequence Restrict(const EventSequence& sequence, double a, double b) {
  if (!(a >= 0.0) || !(a < b)) {
    std::ostringstream msg;
    msg << "restrict: need 0 <= a < b, got [" << a << ", " << b << ")";
    throw ParameterError(msg.str());
  }
  EventSequence out;
  out.start = a;
  out.horizon = b;
  for (const Event& e : sequence.events) {
    if (e.time >= a && e.time < b) out.events.push_back(e);
  }
  return out;
}

std::string_view ToString(SamplingMode mode) {
  return mode == SamplingMode::kGlobal ? "global" : "transductive";
}

SamplingMode ParseSamplingMode(std::string_view text) {
  if (text == "global") return SamplingMode::kGlobal;
  if (text == "transductive") return SamplingMode::kTransductive;
  throw ParameterError("unknown sampling mode '" + std::string(text) + "'");
}

std::vector<int> EvaluationSet::Labels() const {
  std::vector<int> labels;
  labels.reserve(items.size());
  for (const EvalItem& item : items) labels.push_back(item.label);
  return labels;
}

EvaluationSet NegativeSample(const EventSequence& positives, int universe_size,
                             SamplingMode mode, int k, std::uint64_t seed) {
  if (universe_size < 2) throw ParameterError("negative sampling needs at least two types");
  if (k < 1) throw ParameterError("negative sampling needs k >= 1");
  std::vector<int> pool;
  if (mode == SamplingMode::kTransductive) {
    for (const Event& e : positives.events) pool.push_back(e.type);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    if (pool.size() < 2) {
      throw SamplingError("transductive negative sampling needs two observed types, found " +
                          std::to_string(pool.size()));
    }
  } else {
    pool.resize(universe_size);
    std::iota(pool.begin(), pool.end(), 0);
  }

  EvaluationSet out;
  out.window_begin = positives.start;
  out.window_end = positives.horizon;
  out.mode = mode;
  out.items.reserve(positives.events.size() * (1 + k));
  Rng rng(seed);
  const std::uint64_t choices = pool.size() - 1;
  for (const Event& e : positives.events) {
    if (e.type < 0 || e.type >= universe_size) {
      throw ParameterError("negative sampling: event type outside the universe");
    }
    out.items.push_back({e.type, e.time, 1});
    const auto self = std::lower_bound(pool.begin(), pool.end(), e.type) - pool.begin();
    for (int r = 0; r < k; ++r) {
      auto pick = static_cast<std::ptrdiff_t>(rng.UniformIndex(choices));
      if (pick >= self) ++pick;
      out.items.push_back({pool[pick], e.time, 0});
    }
  }
  return out;
}

std::vector<double> OraclePredict(const CausalModel& model,
                                  const EvaluationSet& eval,
                                  const EventSequence& history) {
  const HistoryIndex index(history, model.num_types());
  const double tau = model.tau_bar();
  std::vector<double> scores;
  scores.reserve(eval.items.size());
  for (const EvalItem& item : eval.items) {
    const double drive = ParentDrive(model, item.type, [&](int j) {
      return index.Indicator(j, item.time, tau);
    });
    scores.push_back(drive >= 0.0 ? 1.0 : 0.0);
  }
  return scores;
}

std::string_view ToString(MetricKind kind) {
  switch (kind) {
    case MetricKind::kAccuracy: return "accuracy";
    case MetricKind::kAveragePrecision: return "average_precision";
    case MetricKind::kAuc: return "auc";
  }
  return "accuracy";
}

MetricKind ParseMetricKind(std::string_view text) {
  if (text == "accuracy") return MetricKind::kAccuracy;
  if (text == "average_precision" || text == "ap") return MetricKind::kAveragePrecision;
  if (text == "auc") return MetricKind::kAuc;
  throw ParameterError("unknown metric '" + std::string(text) + "'");
}

double ComputeMetric(std::span<const double> scores, std::span<const int> labels,
                     MetricKind kind) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw ParameterError("metric: scores and labels must have equal nonzero length");
  }
  std::size_t positives = 0;
  for (const int l : labels) {
    if (l != 0 && l != 1) throw ParameterError("metric: labels must be 0 or 1");
    positives += l;
  }
  const std::size_t n = labels.size();
  if (kind == MetricKind::kAccuracy) {
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n; ++k) hits += (scores[k] >= 0.5 ? 1 : 0) == labels[k];
    return static_cast<double>(hits) / static_cast<double>(n);
  }
  if (positives == 0 || positives == n) {
    throw MetricUndefinedError(std::string(ToString(kind)) +
                               " undefined: labels contain a single class");
  }
  if (kind == MetricKind::kAveragePrecision) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return scores[a] > scores[b];
    });
    double sum = 0.0;
    std::size_t tp = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (labels[order[r]] == 1) {
        ++tp;
        sum += static_cast<double>(tp) / static_cast<double>(r + 1);
      }
    }
    return sum / static_cast<double>(positives);
  }
  const std::vector<double> ranks = AverageRanks(scores);
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (labels[k] == 1) rank_sum += ranks[k];
  }
  const double p = static_cast<double>(positives);
  const double q = static_cast<double>(n - positives);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

GapRecord PerformanceGap(double d_star_0, double d_star_dagger, MetricKind metric,
                         std::optional<double> d_bar) {
  if (!(d_star_0 >= 0.0 && d_star_0 <= 1.0) ||
      !(d_star_dagger >= 0.0 && d_star_dagger <= 1.0)) {
    throw ParameterError("performance gap: errors must lie in [0, 1]");
  }
  GapRecord r;
  r.d_star_0 = d_star_0;
  r.d_star_dagger = d_star_dagger;
  r.delta = d_star_dagger - d_star_0;
  r.d_bar = d_bar;
  r.metric = metric;
  return r;
}

GapProbability ComputeGapProbability(std::span<const GapRecord> records,
                                     double delta_star, std::optional<double> beta) {
  GapProbability out;
  int positive = 0;
  for (const GapRecord& r : records) {
    if (!(r.d_star_0 < delta_star)) continue;
    if (beta && (!r.d_bar || !(*r.d_bar > *beta))) continue;
    ++out.count;
    positive += r.delta > 0.0;
  }
  if (out.count == 0) {
    std::ostringstream msg;
    msg << "gap probability undefined: no record with d_star_0 < " << delta_star;
    if (beta) msg << " and d_bar > " << *beta;
    throw UndefinedProbabilityError(msg.str());
  }
  out.probability = static_cast<double>(positive) / static_cast<double>(out.count);
  return out;
}

EventSequence ShuffleTimestamps(const EventSequence& sequence, std::uint64_t seed) {
  EventSequence out = sequence;
  const std::size_t n = out.events.size();
  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k) times[k] = sequence.events[k].time;
  Rng rng(seed);
  for (std::size_t k = n; k > 1; --k) {
    std::swap(times[k - 1], times[rng.UniformIndex(k)]);
  }
  for (std::size_t k = 0; k < n; ++k) out.events[k].time = times[k];
  std::stable_sort(out.events.begin(), out.events.end(), EventBefore);
  return out;
}

std::vector<TriggerStream> RestrictTriggers(std::span<const TriggerStream> triggers,
                                            double a, double b) {
  std::vector<TriggerStream> out;
  out.reserve(triggers.size());
  for (const TriggerStream& s : triggers) {
    TriggerStream r{s.event_type, {}};
    const auto lo = std::lower_bound(s.times.begin(), s.times.end(), a);
    const auto hi = std::lower_bound(s.times.begin(), s.times.end(), b);
    r.times.assign(lo, hi);
    out.push_back(std::move(r));
  }
  return out;
}

double Reflect(double x, double lo, double hi) {
  const double w = hi - lo;
  double y = std::fmod(x - lo, 2.0 * w);
  if (y < 0.0) y += 2.0 * w;
  if (y > w) y = 2.0 * w - y;
  return lo + y;
}

CausalModel PerturbModel(const CausalModel& model, double scale, std::uint64_t seed,
                         const LambdaRange& lambda_range) {
  if (!(scale >= 0.0)) throw ParameterError("perturbation scale must be non-negative");
  if (!(lambda_range.lo > 0.0 && lambda_range.lo < lambda_range.hi)) {
    throw ParameterError("perturbation: bad rate range");
  }
  const int n = model.num_types();
  Rng rng(seed);
  const double lambda_step = scale * (lambda_range.hi - lambda_range.lo) / 2.0;
  std::vector<double> lambdas(n);
  for (int i = 0; i < n; ++i) {
    lambdas[i] = Reflect(model.lambda(i) + lambda_step * rng.Normal(), lambda_range.lo,
                         lambda_range.hi);
  }
  Eigen::MatrixXd theta = model.theta();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (theta(i, j) == 0.0) continue;
      double w = 0.0;
      // A weight landing exactly on 0 would drop the edge; redraw instead.
      while (w == 0.0) w = Reflect(theta(i, j) + scale * rng.Normal(), -1.0, 1.0);
      theta(i, j) = w;
    }
  }
  return CausalModel(std::move(lambdas), theta, model.tau_bar());
}

void ExperimentConfig::Validate() const {
  if (!(horizon > 0.0)) throw ParameterError("experiment: horizon must be positive");
  const double tau = Split();
  if (!(tau > 0.0 && tau < horizon)) {
    throw ParameterError("experiment: split must lie strictly inside (0, horizon)");
  }
  if (negatives_per_positive < 1) throw ParameterError("experiment: need k >= 1");
  if (distance_iters < 0) throw ParameterError("experiment: distance_iters must be >= 0");
}

ExperimentAData PrepareExperimentA(const CausalModel& model_0,
                                   const CausalModel& model_dagger,
                                   const ExperimentConfig& config, std::uint64_t seed) {
  config.Validate();
  const int n = model_0.num_types();
  if (model_dagger.num_types() != n) {
    throw ParameterError("experiment A: models cover different type universes");
  }
  const double tau = config.Split(), T = config.horizon;
  ExperimentAData data;
  data.tau_split = tau;
  data.original = GenerateSequence(model_0, T, DeriveSeed(seed, "original"));
  data.distorted = GenerateSequence(model_dagger, T, DeriveSeed(seed, "distorted"));
  data.eval_x = NegativeSample(TestWindow(data.original.accepted, tau, T), n, config.mode,
                               config.negatives_per_positive,
                               DeriveSeed(seed, "negatives.x"));
  data.eval_x_prime =
      NegativeSample(TestWindow(data.distorted.accepted, tau, T), n, config.mode,
                     config.negatives_per_positive, DeriveSeed(seed, "negatives.x_prime"));
  if (config.distance_iters > 0) {
    data.d_bar = MeanDistance(model_0, model_dagger, T, config.distance_iters,
                              DeriveSeed(seed, "d_bar"), {.threads = config.threads})
                     .mean;
  }
  return data;
}

ExperimentAResult EvaluateExperimentA(const ExperimentAData& data,
                                      std::span<const double> scores_x,
                                      std::span<const double> scores_x_prime,
                                      MetricKind metric) {
  if (scores_x.size() != data.eval_x.items.size() ||
      scores_x_prime.size() != data.eval_x_prime.items.size()) {
    throw ParameterError("experiment A: score count does not match the evaluation set");
  }
  ExperimentAResult r;
  r.outcome.y_x = ComputeMetric(scores_x, data.eval_x.Labels(), metric);
  r.outcome.y_x_prime = ComputeMetric(scores_x_prime, data.eval_x_prime.Labels(), metric);
  r.outcome.train_begin = 0.0;
  r.outcome.train_end = data.tau_split;
  r.outcome.test_begin = data.tau_split;
  r.outcome.test_end = data.eval_x.window_end;
  r.gap = PerformanceGap(1.0 - r.outcome.y_x, 1.0 - r.outcome.y_x_prime, metric, data.d_bar);
  return r;
}

ExperimentAResult RunExperimentA(const CausalModel& model_0,
                                 const CausalModel& model_dagger,
                                 const CausalModel& predictor,
                                 const ExperimentConfig& config, std::uint64_t seed) {
  const ExperimentAData data = PrepareExperimentA(model_0, model_dagger, config, seed);
  const auto sx = OraclePredict(predictor, data.eval_x, data.original.accepted);
  const auto sxp = OraclePredict(predictor, data.eval_x_prime, data.distorted.accepted);
  return EvaluateExperimentA(data, sx, sxp, config.metric);
}

ExperimentBData PrepareExperimentB(const CausalModel& model_0,
                                   const ExperimentConfig& config, int n_shuffles,
                                   std::uint64_t seed) {
  config.Validate();
  if (n_shuffles < 1) throw ParameterError("experiment B: n_shuffles must be >= 1");
  const int n = model_0.num_types();
  const double tau = config.Split(), T = config.horizon;
  ExperimentBData data;
  data.original = GenerateSequence(model_0, T, DeriveSeed(seed, "original"));
  data.train = Restrict(data.original.accepted, 0.0, tau);
  const EventSequence test = TestWindow(data.original.accepted, tau, T);
  // One negative-sampling stream for every copy so that an identity
  // permutation reproduces the original evaluation set.
  const std::uint64_t neg_seed = DeriveSeed(seed, "negatives");
  const int k = config.negatives_per_positive;
  data.eval_x = NegativeSample(test, n, config.mode, k, neg_seed);
  for (int c = 0; c < n_shuffles; ++c) {
    data.shuffled_tests.push_back(ShuffleTimestamps(test, DeriveSeed(seed, "shuffle", c)));
    data.eval_shuffled.push_back(
        NegativeSample(data.shuffled_tests.back(), n, config.mode, k, neg_seed));
  }
  return data;
}

double ProxyDistance(const CausalModel& model_0, const EventSequence& history,
                     const EvaluationSet& eval) {
  const int n = model_0.num_types();
  std::vector<TriggerStream> proxy(n);
  for (int i = 0; i < n; ++i) proxy[i].event_type = i;
  for (const EvalItem& item : eval.items) proxy[item.type].times.push_back(item.time);
  for (auto& s : proxy) {
    std::sort(s.times.begin(), s.times.end());
    s.times.erase(std::unique(s.times.begin(), s.times.end()), s.times.end());
  }
  return ComputeDirectedDistance(model_0, model_0, history, proxy).value;
}

ExperimentBResult RunExperimentB(const CausalModel& model_0,
                                 const ExperimentConfig& config, int n_shuffles,
                                 std::uint64_t seed) {
  const ExperimentBData data = PrepareExperimentB(model_0, config, n_shuffles, seed);
  ExperimentBResult r;
  r.test_begin = config.Split();
  r.test_end = config.horizon;
  const EventSequence& full = data.original.accepted;
  r.y_x = ComputeMetric(OraclePredict(model_0, data.eval_x, full), data.eval_x.Labels(),
                        config.metric);
  r.original_distance = ProxyDistance(model_0, full, data.eval_x);
  for (int c = 0; c < n_shuffles; ++c) {
    const EventSequence history = Concatenate(data.train, data.shuffled_tests[c]);
    const EvaluationSet& eval = data.eval_shuffled[c];
    r.y_x_prime.push_back(
        ComputeMetric(OraclePredict(model_0, eval, history), eval.Labels(), config.metric));
    r.shuffle_distances.push_back(ProxyDistance(model_0, history, eval));
  }
  r.shuffle_distance_interval = MeanInterval(r.shuffle_distances);
  return r;
}

std::vector<GapRecord> HypothesisStudy(const HypothesisConfig& config, std::uint64_t seed) {
  if (config.pairs < 1) throw ParameterError("hypothesis study: pairs must be >= 1");
  if (!(config.horizon > 0.0)) throw ParameterError("hypothesis study: bad horizon");
  if (config.distance_iters < 1) throw ParameterError("hypothesis study: distance_iters must be >= 1");
  const double T = config.horizon;
  std::vector<GapRecord> records(config.pairs);
  ParallelFor(config.pairs, config.threads, [&](std::size_t p) {
    const std::uint64_t base = DeriveSeed(seed, "pair", p);
    Rng strengths(DeriveSeed(base, "strengths"));
    const double s_dagger = strengths.Uniform() * config.dagger_scale_max;
    const double s_star = strengths.Uniform() * config.star_scale_max;
    const CausalModel c0 = SampleRandomModel(config.num_types,
                                             ErdosRenyi{config.edge_probability},
                                             LambdaRange{}, 1.0, DeriveSeed(base, "c0"));
    const CausalModel dagger = PerturbModel(c0, s_dagger, DeriveSeed(base, "dagger"));
    const CausalModel star = PerturbModel(c0, s_star, DeriveSeed(base, "star"));
    const double tau = T / 2.0;
    const Realization r0 = GenerateSequence(c0, T, DeriveSeed(base, "original"));
    const Realization rd = GenerateSequence(dagger, T, DeriveSeed(base, "distorted"));
    const double d0 = ComputeDirectedDistance(star, c0, r0.accepted,
                                              RestrictTriggers(r0.triggers, tau, T))
                          .value;
    const double dd = ComputeDirectedDistance(star, dagger, rd.accepted,
                                              RestrictTriggers(rd.triggers, tau, T))
                          .value;
    const double d_bar =
        MeanDistance(c0, dagger, T, config.distance_iters, DeriveSeed(base, "d_bar"),
                     {.threads = 1})
            .mean;
    records[p] = PerformanceGap(d0, dd, MetricKind::kAccuracy, d_bar);
  });
  return records;
}

namespace {

template <typename Point>
void Fill(Point& point, std::span<const GapRecord> records, double delta_star,
          std::optional<double> beta) {
  try {
    const GapProbability g = ComputeGapProbability(records, delta_star, beta);
    point.probability = g.probability;
    point.count = g.count;
    point.defined = true;
  } catch (const UndefinedProbabilityError&) {
    point.defined = false;
  }
}

}  // namespace

GapCurves SummarizeGaps(std::span<const GapRecord> records, double delta_star,
                        int beta_points, int delta_points) {
  if (beta_points < 1 || delta_points < 1) {
    throw ParameterError("gap curves: grids need at least one point");
  }
  GapCurves out;
  out.delta_star = delta_star;
  std::vector<double> d_bars;
  for (const GapRecord& r : records) {
    if (r.d_star_0 < delta_star && r.d_bar) d_bars.push_back(*r.d_bar);
  }
  std::sort(d_bars.begin(), d_bars.end());
  std::vector<double> betas = {0.0};
  for (int k = 1; k < beta_points; ++k) {
    if (d_bars.empty()) break;
    const std::size_t idx = k * d_bars.size() / beta_points;
    betas.push_back(d_bars[idx == 0 ? 0 : idx - 1]);
  }
  std::vector<double> deltas;
  for (int k = 1; k <= delta_points; ++k) {
    deltas.push_back(static_cast<double>(k) / static_cast<double>(delta_points));
  }
  for (const double b : betas) {
    CurvePoint p{.threshold = b};
    Fill(p, records, delta_star, b);
    out.beta_curve.push_back(p);
  }
  for (const double d : deltas) {
    CurvePoint p{.threshold = d};
    Fill(p, records, d, std::nullopt);
    out.delta_curve.push_back(p);
  }
  for (const double b : betas) {
    for (const double d : deltas) {
      GridCell c{.beta = b, .delta_star = d};
      Fill(c, records, d, b);
      out.grid.push_back(c);
    }
  }
  return out;
}

}  // namespace ctig
