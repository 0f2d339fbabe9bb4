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


// Acceptance suite: one PASS/FAIL line per reproduction target, each with
// the measured quantities and the wall time. Exit status 1 if any fails.
// Usage: acceptance [--seed S] [--only NAME]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "ctigbench/counterfactual.h"
#include "ctigbench/ctig_builder.h"
#include "ctigbench/errors.h"
#include "ctigbench/model_distance.h"
#include "ctigbench/parallel.h"
#include "ctigbench/properties.h"
#include "ctigbench/random.h"
#include "ctigbench/stats.h"

namespace ctig {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

CausalModel RandomModel(int n, std::uint64_t seed) {
  return SampleRandomModel(n, ErdosRenyi{0.5}, {}, 1.0, seed);
}

// Every trigger of a realization, labelled by whether it was accepted.
EvaluationSet TriggerEvalSet(const Realization& r, double horizon) {
  EvaluationSet e;
  e.window_end = horizon;
  for (const Event& ev : MergeTimeline(r.triggers)) e.items.push_back({ev.type, ev.time, 0});
  std::size_t cursor = 0;
  for (auto& item : e.items) {
    while (cursor < r.accepted.events.size() &&
           EventBefore(r.accepted.events[cursor], Event{item.type, item.time})) {
      ++cursor;
    }
    item.label = cursor < r.accepted.events.size() &&
                 r.accepted.events[cursor] == Event{item.type, item.time};
  }
  return e;
}

Outcome SelfPrediction(std::uint64_t seed) {
  const double horizon = 1000.0;
  int nonzero_distance = 0, oracle_errors = 0, models = 0;
  for (int m = 0; m < 100; ++m) {
    const std::uint64_t s = DeriveSeed(seed, "self_prediction", m);
    const int n = 2 + static_cast<int>(Rng(DeriveSeed(s, "n")).UniformIndex(9));
    const CausalModel model = RandomModel(n, DeriveSeed(s, "model"));
    const Realization r = GenerateSequence(model, horizon, DeriveSeed(s, "sequence"));
    try {
      nonzero_distance +=
          ComputeDirectedDistance(model, model, r.accepted, r.triggers).value != 0.0;
    } catch (const UndefinedDistanceError&) {
      ++nonzero_distance;
    }
    const EvaluationSet e = TriggerEvalSet(r, horizon);
    const auto scores = OraclePredict(model, e, r.accepted);
    for (std::size_t k = 0; k < scores.size(); ++k) {
      oracle_errors += (scores[k] >= 0.5) != (e.items[k].label == 1);
    }
    ++models;
  }
  return {nonzero_distance == 0 && oracle_errors == 0,
          Fmt("models=%d nonzero_self_distances=%d oracle_errors=%d", models, nonzero_distance,
              oracle_errors)};
}

Outcome DistanceAxioms(std::uint64_t seed) {
  int out_of_range = 0, asymmetric = 0, same_object_nonzero = 0;
  auto in_unit = [](double d) { return std::isnan(d) || (d >= 0.0 && d <= 1.0); };
  for (int p = 0; p < 100; ++p) {
    const std::uint64_t s = DeriveSeed(seed, "distance_axioms", p);
    const CausalModel a = RandomModel(7, DeriveSeed(s, "a"));
    const CausalModel b = RandomModel(7, DeriveSeed(s, "b"));
    const Realization ra = GenerateSequence(a, 1000.0, DeriveSeed(s, "ra"));
    const Realization rb = GenerateSequence(b, 1000.0, DeriveSeed(s, "rb"));
    const DistanceReport ab = ComputeSymmetricDistance(a, b, ra, rb);
    const DistanceReport ba = ComputeSymmetricDistance(b, a, rb, ra);
    for (const double d : {ab.symmetric, ab.d_a_on_b, ab.d_b_on_a}) out_of_range += !in_unit(d);
    for (const double d : ab.per_type_a_on_b) out_of_range += !in_unit(d);
    for (const double d : ab.per_type_b_on_a) out_of_range += !in_unit(d);
    asymmetric += ab.symmetric != ba.symmetric;
    const auto mean = MeanDistance(a, b, 1000.0, 4, DeriveSeed(s, "mean"), {.threads = 1});
    out_of_range += !in_unit(mean.mean);
    same_object_nonzero +=
        MeanDistance(a, a, 1000.0, 4, DeriveSeed(s, "self"), {.threads = 1}).mean != 0.0;
  }
  return {out_of_range == 0 && asymmetric == 0 && same_object_nonzero == 0,
          Fmt("pairs=100 out_of_range=%d swap_mismatches=%d nonzero_same_object=%d",
              out_of_range, asymmetric, same_object_nonzero)};
}

Outcome VarianceDecay(std::uint64_t seed, int threads) {
  const CausalModel a = RandomModel(7, DeriveSeed(seed, "variance_a"));
  const CausalModel b = RandomModel(7, DeriveSeed(seed, "variance_b"));
  const std::vector<VarianceCell> grid = {{250.0, 10}, {250.0, 40}, {250.0, 160}};
  const auto rows = VarianceDecayStudy(a, b, grid, 100, DeriveSeed(seed, "variance"), threads);
  bool decreasing = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    decreasing = decreasing && rows[k].variance < rows[k - 1].variance;
  }
  const double slope = LogLogSlope(rows);
  return {decreasing && slope >= -1.4 && slope <= -0.6,
          Fmt("sizes=2500,10000,40000 variances=%.3g,%.3g,%.3g strictly_decreasing=%s "
              "slope=%.3f (need [-1.4,-0.6])",
              rows[0].variance, rows[1].variance, rows[2].variance,
              decreasing ? "yes" : "no", slope)};
}

Outcome HypothesisCurves(std::uint64_t seed, int threads) {
  HypothesisConfig hc;
  hc.threads = threads;
  const auto records = HypothesisStudy(hc, seed);
  double lo = 1.0, hi = 0.0;
  for (const auto& r : records) {
    lo = std::min(lo, r.d_star_0);
    hi = std::max(hi, r.d_star_0);
  }
  const GapCurves curves = SummarizeGaps(records, 0.2, 10, 20);
  std::vector<double> beta, prob;
  for (const auto& p : curves.beta_curve) {
    if (!p.defined) continue;
    beta.push_back(p.threshold);
    prob.push_back(p.probability);
  }
  const double rho = beta.size() == 10 ? SpearmanRho(beta, prob) : std::nan("");
  const double top = prob.empty() ? std::nan("") : prob.back();
  const int top_count = curves.beta_curve.back().count;
  const auto& last = curves.delta_curve.back();
  const double final_p = last.defined ? last.probability : std::nan("");
  const double first_p = curves.delta_curve.front().defined
                             ? curves.delta_curve.front().probability : std::nan("");
  const bool spans = lo <= 0.0 + 1e-12 && hi >= 0.4;
  const bool pass = records.size() >= 100 && spans && rho >= 0.8 && top >= 0.9 &&
                    final_p <= 0.7 && final_p < first_p;
  return {pass, Fmt("pairs=%zu d_star_0_range=[%.3f,%.3f] spearman=%.3f (need >=0.8) "
                    "top_beta_p=%.3f n=%d (need >=0.9) delta_curve %.3f -> %.3f "
                    "(final need <=0.7)",
                    records.size(), lo, hi, rho, top, top_count, first_p, final_p)};
}

Outcome MonotonicityEquivalence(std::uint64_t seed) {
  long long pairs = 0, disagreements = 0;
  int max_parents = 0;
  for (int m = 0; m < 500; ++m) {
    const CausalModel model = RandomModel(10, DeriveSeed(seed, "prop5", m));
    for (int i = 0; i < model.num_types(); ++i) {
      max_parents = std::max<int>(max_parents, static_cast<int>(model.parents(i).size()));
      for (const int j : model.parents(i)) {
        ++pairs;
        disagreements +=
            IsMonotonicClosedForm(model, i, j) != IsMonotonicBruteForce(model, i, j).verdict;
      }
    }
  }
  return {disagreements == 0 && max_parents <= 10,
          Fmt("models=500 pairs=%lld max_parents=%d disagreements=%lld", pairs, max_parents,
              disagreements)};
}

Outcome Pns(std::uint64_t seed, int threads) {
  const int configs = 20;
  const double horizon = 1e4;
  std::vector<double> err(configs);
  std::vector<long long> min_cell(configs);
  std::vector<int> monotone(configs);
  ParallelFor(configs, threads, [&](std::size_t k) {
    const CausalModel m = SampleExogenousPairModel(3, DeriveSeed(seed, "pns_model", k));
    const Realization r = GenerateSequence(m, horizon, DeriveSeed(seed, "pns_sequence", k));
    const PnsEstimate est = EstimatePns(m, r, 0, 1);
    const InterventionalPns oracle =
        InterventionalPnsOracle(m, 0, 1, horizon, DeriveSeed(seed, "pns_oracle", k));
    err[k] = std::abs(est.value - oracle.value);
    min_cell[k] = std::min(est.count_flag_1, est.count_flag_0);
    monotone[k] = est.monotone.value_or(false);
  });
  const int within = static_cast<int>(std::count_if(err.begin(), err.end(),
                                                    [](double e) { return e <= 0.05; }));
  const long long smallest = *std::min_element(min_cell.begin(), min_cell.end());
  const int all_monotone = static_cast<int>(std::count(monotone.begin(), monotone.end(), 1));
  return {within >= 19 && smallest >= 500 && all_monotone == configs,
          Fmt("configs=%d monotone=%d within_0.05=%d (need >=19) max_error=%.4f "
              "min_cell=%lld (need >=500)",
              configs, all_monotone, within, *std::max_element(err.begin(), err.end()),
              smallest)};
}

Outcome CtigStructure(std::uint64_t seed) {
  int bad_antisymmetry = 0, bad_mask = 0, bad_monotone = 0;
  const std::vector<double> nu1_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (int s = 0; s < 100; ++s) {
    const CtigModel m = BuildCtigModel(CtigParams::Reference(DeriveSeed(seed, "ctig", s)));
    const auto& mt = m.matrices;
    const Eigen::Index e = mt.theta.rows();
    bool anti = true;
    for (Eigen::Index i = 0; i < e; ++i) {
      anti = anti && mt.theta_tilde(i, i) == 0.0;
      for (Eigen::Index j = 0; j < e; ++j) {
        anti = anti && mt.theta_tilde(i, j) == -mt.theta_tilde(j, i);
      }
    }
    bad_antisymmetry += !anti;
    int zero_rows = 0, zero_cols = 0;
    for (Eigen::Index i = 0; i < e; ++i) {
      zero_rows += mt.mask.row(i).isZero();
      zero_cols += mt.mask.col(i).isZero();
    }
    bool masked_ok = zero_rows == 2 && zero_cols == 2 && m.noncausal_edges.size() == 2;
    for (const int k : m.noncausal_edges) {
      masked_ok = masked_ok && mt.mask.row(k).isZero() && mt.mask.col(k).isZero() &&
                  mt.theta.row(k).isZero() && mt.theta.col(k).isZero();
    }
    bad_mask += !masked_ok;
    Eigen::Index previous = e * e + 1;
    bool monotone = true;
    for (const double nu1 : nu1_grid) {
      const Eigen::Index nnz = (ThresholdMatrix(mt.h, nu1).array() != 0.0).count();
      monotone = monotone && nnz <= previous;
      previous = nnz;
    }
    bad_monotone += !monotone;
  }
  return {bad_antisymmetry == 0 && bad_mask == 0 && bad_monotone == 0,
          Fmt("seeds=100 antisymmetry_failures=%d mask_failures=%d nnz_monotone_failures=%d",
              bad_antisymmetry, bad_mask, bad_monotone)};
}

Outcome ExperimentBSeparation(std::uint64_t seed, int threads) {
  const int runs = 100, shuffles = 10;
  ExperimentConfig ec;
  ec.threads = 1;
  std::vector<int> acc(runs), dist(runs);
  std::vector<std::vector<double>> shuffle_d(runs);
  ParallelFor(runs, threads, [&](std::size_t r) {
    const std::uint64_t rs = DeriveSeed(seed, "experiment_b", r);
    const CausalModel m = RandomModel(7, DeriveSeed(rs, "c0"));
    const ExperimentBResult res = RunExperimentB(m, ec, shuffles, DeriveSeed(rs, "run"));
    acc[r] = std::all_of(res.y_x_prime.begin(), res.y_x_prime.end(),
                         [&](double y) { return res.y_x > y; });
    dist[r] = std::all_of(res.shuffle_distances.begin(), res.shuffle_distances.end(),
                          [&](double d) { return d > res.original_distance; });
    shuffle_d[r] = res.shuffle_distances;
  });
  const int acc_ok = static_cast<int>(std::count(acc.begin(), acc.end(), 1));
  const int dist_ok = static_cast<int>(std::count(dist.begin(), dist.end(), 1));
  auto interval = [&](int upto) {
    std::vector<double> pooled;
    for (int r = 0; r < upto; ++r) pooled.insert(pooled.end(), shuffle_d[r].begin(), shuffle_d[r].end());
    return MeanInterval(pooled);
  };
  const NormalInterval i10 = interval(10), i25 = interval(25), i100 = interval(100);
  const bool shrinks = i100.half_width < i25.half_width && i25.half_width < i10.half_width;
  return {acc_ok >= 95 && dist_ok >= 95 && shrinks,
          Fmt("runs=100 accuracy_separated=%d distance_separated=%d (need >=95 each) "
              "shuffle_distance=%.4f ci_half_width@10/25/100=%.4f/%.4f/%.4f",
              acc_ok, dist_ok, i100.mean, i10.half_width, i25.half_width, i100.half_width)};
}

Outcome OracleHeadline(std::uint64_t seed, int threads) {
  const int models = 100;
  std::vector<long long> correct(models), total(models);
  std::vector<double> accuracy(models);
  ParallelFor(models, threads, [&](std::size_t m) {
    const std::uint64_t s = DeriveSeed(seed, "oracle_headline", m);
    const CausalModel model = RandomModel(7, DeriveSeed(s, "model"));
    const Realization r = GenerateSequence(model, 1000.0, DeriveSeed(s, "sequence"));
    const EvaluationSet e = NegativeSample(Restrict(r.accepted, 500.0, 1000.0), 7,
                                           SamplingMode::kTransductive, 1,
                                           DeriveSeed(s, "negatives"));
    const auto scores = OraclePredict(model, e, r.accepted);
    long long c = 0;
    for (std::size_t k = 0; k < scores.size(); ++k) c += (scores[k] >= 0.5) == (e.items[k].label == 1);
    correct[m] = c;
    total[m] = static_cast<long long>(scores.size());
    accuracy[m] = ComputeMetric(scores, e.Labels(), MetricKind::kAccuracy);
  });
  long long k = 0, n = 0;
  for (int m = 0; m < models; ++m) {
    k += correct[m];
    n += total[m];
  }
  const double mean = Mean(accuracy);
  const double p = BinomialUpperTail(k, n, 0.5);
  return {mean > 0.55 && p < 0.01,
          Fmt("models=%d mean_accuracy=%.4f (need >0.55) pooled=%lld/%lld one_sided_p=%.3g "
              "(need <0.01)",
              models, mean, k, n, p)};
}

Outcome DegeneracyGate(std::uint64_t seed) {
  int mixed = 0, mixed_fail = 0, nonneg = 0, nonneg_missed = 0;
  for (int m = 0; m < 200; ++m) {
    const std::uint64_t s = DeriveSeed(seed, "degeneracy", m);
    const CausalModel model = RandomModel(7, DeriveSeed(s, "model"));
    const bool has_neg = (model.theta().array() < 0.0).any();
    const bool has_pos = (model.theta().array() > 0.0).any();
    if (has_neg && has_pos) {
      ++mixed;
      mixed_fail += !PassesDegeneracyCheck(GenerateSequence(model, 1000.0, DeriveSeed(s, "seq")));
    }
    const CausalModel abs_model = model.WithTheta(model.theta().cwiseAbs());
    ++nonneg;
    nonneg_missed +=
        PassesDegeneracyCheck(GenerateSequence(abs_model, 1000.0, DeriveSeed(s, "seq")));
  }
  return {mixed > 0 && mixed_fail == 0 && nonneg_missed == 0,
          Fmt("mixed_sign_datasets=%d failing=%d nonnegative_datasets=%d undetected=%d", mixed,
              mixed_fail, nonneg, nonneg_missed)};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace ctig

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  std::string only;
  for (int k = 1; k + 1 < argc; k += 2) {
    const std::string flag = argv[k];
    if (flag == "--seed") seed = std::strtoull(argv[k + 1], nullptr, 10);
    else if (flag == "--only") only = argv[k + 1];
  }
  const int threads = ctig::DefaultThreadCount();
  using ctig::Outcome;
  const std::vector<ctig::Criterion> criteria = {
      {"self_prediction_identity", 60, [&] { return ctig::SelfPrediction(seed); }},
      {"distance_axioms", 600, [&] { return ctig::DistanceAxioms(seed); }},
      {"variance_decay", 600, [&] { return ctig::VarianceDecay(seed, threads); }},
      {"hypothesis_gap_curves", 1800, [&] { return ctig::HypothesisCurves(seed, threads); }},
      {"monotonicity_oracle_equivalence", 60, [&] { return ctig::MonotonicityEquivalence(seed); }},
      {"pns_identification", 300, [&] { return ctig::Pns(seed, threads); }},
      {"ctig_structural_invariants", 10, [&] { return ctig::CtigStructure(seed); }},
      {"experiment_b_separation", 900, [&] { return ctig::ExperimentBSeparation(seed, threads); }},
      {"oracle_headline_accuracy", 600, [&] { return ctig::OracleHeadline(seed, threads); }},
      {"degeneracy_gate", 600, [&] { return ctig::DegeneracyGate(seed); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s %s: %s time=%.1fs%s\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
