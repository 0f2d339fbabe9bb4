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


#include "ctigbench/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "ctigbench/dataset.h"
#include "ctigbench/errors.h"
#include "ctigbench/model_distance.h"
#include "ctigbench/parallel.h"
#include "ctigbench/properties.h"
#include "ctigbench/random.h"
#include "ctigbench/stats.h"

namespace ctig {

namespace {

using nlohmann::json;

int Threads(const Config& c) {
  const auto t = static_cast<int>(c.Int("threads"));
  return t > 0 ? t : DefaultThreadCount();
}

LambdaRange Lambdas(const Config& c) {
  return {c.Number("model.lambda_min"), c.Number("model.lambda_max")};
}

json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json ModelJson(const CausalModel& m) {
  return {{"num_types", m.num_types()},
          {"tau_bar", m.tau_bar()},
          {"lambdas", m.lambdas()},
          {"theta", MatrixJson(m.theta())}};
}

std::string Numbered(const char* prefix, std::size_t k, int width = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, k);
  return buf;
}

std::filesystem::path EnsureDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

DatasetHeader HeaderFor(const ConfiguredModel& m, const ExperimentConfig& ec,
                        std::optional<double> d_bar) {
  DatasetHeader h;
  h.mode = m.edges ? DatasetMode::kCtig : DatasetMode::kCes;
  h.num_types = m.model.num_types();
  if (m.edges) h.num_nodes = m.edges->num_nodes();
  h.horizon = ec.horizon;
  h.tau_bar = m.model.tau_bar();
  h.train_begin = 0.0;
  h.train_end = ec.Split();
  h.test_begin = ec.Split();
  h.test_end = ec.horizon;
  h.sampling_mode = ec.mode;
  h.d_bar = d_bar;
  return h;
}

// Event table with node pairs in ctig mode.
Table EventTable(const EventSequence& s, const std::optional<EdgeSpace>& edges) {
  Table t{{"type", "src", "dst", "time"}, {}};
  for (const Event& e : s.events) {
    if (edges) {
      const auto [a, b] = edges->Pair(e.type);
      t.Add({std::int64_t{e.type}, std::int64_t{a}, std::int64_t{b}, e.time});
    } else {
      t.Add({std::int64_t{e.type}, std::string(), std::string(), e.time});
    }
  }
  return t;
}

bool HasMixedSigns(const CausalModel& m) {
  return (m.theta().array() < 0.0).any() && (m.theta().array() > 0.0).any();
}

// ---------------------------------------------------------------- generate

void Generate(const Config& c, Report& report) {
  const std::uint64_t seed = c.Uint("seed");
  const ConfiguredModel m = MakeConfiguredModel(c, DeriveSeed(seed, "model"));
  const double horizon = c.Number("horizon");
  const Realization r = GenerateSequence(m.model, horizon, DeriveSeed(seed, "sequence"));

  std::vector<std::int64_t> triggers(m.model.num_types(), 0), accepted(m.model.num_types(), 0);
  for (const auto& s : r.triggers) triggers[s.event_type] = std::ssize(s.times);
  for (const auto& e : r.accepted.events) ++accepted[e.type];

  json& out = report.results();
  out["model"] = ModelJson(m.model);
  out["horizon"] = horizon;
  out["triggers_per_type"] = triggers;
  out["accepted_per_type"] = accepted;
  out["num_triggers"] = r.NumTriggers();
  out["num_accepted"] = r.accepted.size();
  out["mixed_signs"] = HasMixedSigns(m.model);
  out["passes_degeneracy_check"] = PassesDegeneracyCheck(r);
  report.AddTable("events", EventTable(r.accepted, m.edges));
}

// -------------------------------------------------------------------- ctig

void Ctig(const Config& c, Report& report) {
  const CtigParams params = MakeCtigParams(c, c.Uint("seed"));
  const CtigModel m = BuildCtigModel(params);
  const auto& mats = m.matrices;
  const Eigen::Index e = mats.theta.rows();

  bool antisymmetric = true;
  for (Eigen::Index i = 0; i < e; ++i) {
    for (Eigen::Index j = 0; j < e; ++j) {
      antisymmetric = antisymmetric && mats.theta_tilde(i, j) == -mats.theta_tilde(j, i);
    }
  }
  json& out = report.results();
  out["num_nodes"] = params.num_nodes;
  out["num_edges"] = m.edges.size();
  out["noncausal_edges"] = m.noncausal_edges;
  out["theta_tilde_antisymmetric"] = antisymmetric;
  out["theta_tilde_nonzeros"] = (mats.theta_tilde.array() != 0.0).count();
  out["theta_nonzeros"] = (mats.theta.array() != 0.0).count();
  out["model"] = ModelJson(m.model);

  Table theta{{"i", "j", "src_i", "dst_i", "src_j", "dst_j", "h", "theta_tilde", "theta"}, {}};
  for (Eigen::Index i = 0; i < e; ++i) {
    for (Eigen::Index j = 0; j < e; ++j) {
      const auto [ai, bi] = m.edges.Pair(static_cast<int>(i));
      const auto [aj, bj] = m.edges.Pair(static_cast<int>(j));
      theta.Add({std::int64_t{i}, std::int64_t{j}, std::int64_t{ai}, std::int64_t{bi},
                 std::int64_t{aj}, std::int64_t{bj}, mats.h(i, j), mats.theta_tilde(i, j),
                 mats.theta(i, j)});
    }
  }
  report.AddTable("theta", std::move(theta));

  Table sweep{{"nu1", "theta_tilde_nonzeros"}, {}};
  for (const double nu1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    sweep.Add({nu1, static_cast<std::int64_t>(
                        (ThresholdMatrix(mats.h, nu1).array() != 0.0).count())});
  }
  report.AddTable("nu1_sweep", std::move(sweep));
}

// ---------------------------------------------------------------- distance

struct ModelPair {
  ConfiguredModel a;
  ConfiguredModel b;
};

ModelPair MakePair(const Config& c) {
  const std::uint64_t seed = c.Uint("seed");
  return {MakeConfiguredModel(c, DeriveSeed(seed, "model_a")),
          MakeConfiguredModel(c, DeriveSeed(seed, "model_b"))};
}

void Distance(const Config& c, Report& report) {
  const ModelPair p = MakePair(c);
  const MeanDistanceEstimate est =
      MeanDistance(p.a.model, p.b.model, c.Number("horizon"),
                   static_cast<int>(c.Int("distance.iters")),
                   DeriveSeed(c.Uint("seed"), "distance"), {.threads = Threads(c)});
  json& out = report.results();
  out["model_a"] = ModelJson(p.a.model);
  out["model_b"] = ModelJson(p.b.model);
  out["mean"] = est.mean;
  out["variance"] = est.variance;
  out["iters"] = est.iters;
  out["horizon"] = est.horizon;
  out["resampled"] = est.resampled;
  out["skipped_types"] = est.skipped_types;
  Table draws{{"iter", "distance"}, {}};
  for (std::size_t k = 0; k < est.draws.size(); ++k) {
    draws.Add({static_cast<std::int64_t>(k), est.draws[k]});
  }
  report.AddTable("draws", std::move(draws));
}

void VarianceStudy(const Config& c, Report& report) {
  const ModelPair p = MakePair(c);
  std::vector<VarianceCell> grid;
  for (const auto& cell : c.At("variance_study.grid")) {
    grid.push_back({cell.at("horizon").get<double>(), cell.at("iters").get<int>()});
  }
  const auto rows = VarianceDecayStudy(
      p.a.model, p.b.model, grid, static_cast<int>(c.Int("variance_study.replications")),
      DeriveSeed(c.Uint("seed"), "variance_study"), Threads(c));
  json& out = report.results();
  bool decreasing = true;
  std::vector<VarianceRow> sorted = rows;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return x.effective_size < y.effective_size;
  });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    decreasing = decreasing && sorted[k].variance < sorted[k - 1].variance;
  }
  out["strictly_decreasing"] = decreasing;
  try {
    out["log_log_slope"] = LogLogSlope(rows);
  } catch (const ParameterError&) {
    out["log_log_slope"] = nullptr;
  }
  report.AddTable("variance", VarianceTable(rows));
}

// ------------------------------------------------------------ experiment a

struct PairSetup {
  ConfiguredModel model_0;
  CausalModel dagger;
  double scale = 0.0;
  std::uint64_t run_seed = 0;
};

PairSetup MakeExperimentPair(const Config& c, std::size_t p) {
  const std::uint64_t ps = DeriveSeed(c.Uint("seed"), "pair", p);
  ConfiguredModel m0 = MakeConfiguredModel(c, DeriveSeed(ps, "c0"));
  const double scale = c.IsNull("experiment_a.dagger_scale")
                           ? Rng(DeriveSeed(ps, "scale")).Uniform()
                           : c.Number("experiment_a.dagger_scale");
  CausalModel dagger = PerturbModel(m0.model, scale, DeriveSeed(ps, "dagger"), Lambdas(c));
  return {std::move(m0), std::move(dagger), scale, DeriveSeed(ps, "run")};
}

void WriteExperimentADataset(const PairSetup& s, const ExperimentAData& data,
                             const ExperimentConfig& ec, const std::filesystem::path& path) {
  const Dataset d = MakeDataset(HeaderFor(s.model_0, ec, data.d_bar),
                                Restrict(data.original.accepted, 0.0, data.tau_split),
                                data.eval_x, data.eval_x_prime);
  WriteDataset(d, path.string());
}

void ExperimentA(const Config& c, Report& report, const std::string& out_dir) {
  const ExperimentConfig ec = MakeExperimentConfig(c);
  const auto pairs = static_cast<std::size_t>(c.Int("experiment_a.pairs"));
  const bool external = c.String("experiment_a.predictor") == "external";
  const bool have_scores = external && !c.IsNull("experiment_a.scores_dir");

  std::vector<GapRecord> records;
  Table table{{"pair", "scale", "y_x", "y_x_prime", "delta", "d_bar"}, {}};
  std::filesystem::path data_dir;
  if (external) data_dir = EnsureDir(std::filesystem::path(out_dir) / "datasets");
  for (std::size_t p = 0; p < pairs; ++p) {
    const PairSetup s = MakeExperimentPair(c, p);
    std::optional<ExperimentAResult> result;
    if (!external) {
      result = RunExperimentA(s.model_0.model, s.dagger, s.model_0.model, ec, s.run_seed);
    } else {
      const ExperimentAData data = PrepareExperimentA(s.model_0.model, s.dagger, ec, s.run_seed);
      const std::string stem = Numbered("pair_", p);
      WriteExperimentADataset(s, data, ec, data_dir / (stem + ".csv"));
      if (have_scores) {
        const std::filesystem::path scores(c.String("experiment_a.scores_dir"));
        const auto sx = ReadScores((scores / (stem + ".test.scores.csv")).string(), data.eval_x);
        const auto sxp =
            ReadScores((scores / (stem + ".test_cf.scores.csv")).string(), data.eval_x_prime);
        result = EvaluateExperimentA(data, sx, sxp, ec.metric);
      }
    }
    if (!result) continue;
    records.push_back(result->gap);
    const auto& o = result->outcome;
    table.Add({static_cast<std::int64_t>(p), s.scale, o.y_x, o.y_x_prime, result->gap.delta,
               result->gap.d_bar ? Cell(*result->gap.d_bar) : Cell(std::nan(""))});
  }

  json& out = report.results();
  out["pairs"] = pairs;
  out["predictor"] = c.String("experiment_a.predictor");
  out["metric"] = ToString(ec.metric);
  out["evaluated"] = records.size();
  if (external) out["datasets_dir"] = "datasets";
  if (!records.empty()) {
    std::vector<double> deltas, y_x, d_bar, d_bar_delta;
    for (std::size_t k = 0; k < records.size(); ++k) {
      deltas.push_back(records[k].delta);
      if (records[k].d_bar) {
        d_bar.push_back(*records[k].d_bar);
        d_bar_delta.push_back(records[k].delta);
      }
    }
    for (const auto& row : table.rows) y_x.push_back(std::get<double>(row[2]));
    out["mean_delta"] = Mean(deltas);
    out["mean_y_x"] = Mean(y_x);
    const double rho = d_bar.size() >= 2 ? SpearmanRho(d_bar, d_bar_delta) : std::nan("");
    out["spearman_d_bar_delta"] = std::isnan(rho) ? json(nullptr) : json(rho);
  }
  report.AddTable("pairs", std::move(table));
  report.AddTable("gap_scatter", GapScatterTable(records, c.Number("lowess.fraction")));
}

// ------------------------------------------------------------ experiment b

void ExperimentB(const Config& c, Report& report) {
  const ExperimentConfig ec = MakeExperimentConfig(c);
  const auto runs = static_cast<std::size_t>(c.Int("experiment_b.runs"));
  const int shuffles = static_cast<int>(c.Int("experiment_b.shuffles"));

  std::vector<double> originals;
  std::vector<std::vector<double>> shuffled;
  std::vector<double> pooled_distances;
  Table dist{{"run", "shuffle", "original_distance", "shuffle_distance"}, {}};
  Table ci{{"runs", "mean", "half_width", "count"}, {}};
  std::int64_t accuracy_separated = 0, distance_separated = 0, distance_pairs_above = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t rs = DeriveSeed(c.Uint("seed"), "run", r);
    const ConfiguredModel m0 = MakeConfiguredModel(c, DeriveSeed(rs, "c0"));
    const ExperimentBResult res =
        RunExperimentB(m0.model, ec, shuffles, DeriveSeed(rs, "experiment"));
    originals.push_back(res.y_x);
    shuffled.push_back(res.y_x_prime);
    accuracy_separated += std::all_of(res.y_x_prime.begin(), res.y_x_prime.end(),
                                      [&](double y) { return res.y_x > y; });
    bool all_above = true;
    for (std::size_t k = 0; k < res.shuffle_distances.size(); ++k) {
      const bool above = res.shuffle_distances[k] > res.original_distance;
      all_above = all_above && above;
      distance_pairs_above += above;
      dist.Add({static_cast<std::int64_t>(r), static_cast<std::int64_t>(k),
                res.original_distance, res.shuffle_distances[k]});
      pooled_distances.push_back(res.shuffle_distances[k]);
    }
    distance_separated += all_above;
    if (pooled_distances.size() >= 2) {
      const NormalInterval iv = MeanInterval(pooled_distances);
      ci.Add({static_cast<std::int64_t>(r + 1), iv.mean, iv.half_width,
              static_cast<std::int64_t>(iv.count)});
    }
  }

  json& out = report.results();
  out["runs"] = runs;
  out["shuffles"] = shuffles;
  out["metric"] = ToString(ec.metric);
  out["runs_original_beats_every_shuffle"] = accuracy_separated;
  out["runs_every_shuffle_farther"] = distance_separated;
  out["shuffles_farther"] = distance_pairs_above;
  out["distance_definition"] =
      "directed distance of the generating model on train + test window, with the "
      "evaluation-set timestamps of each type standing in for its triggers";
  out["mean_y_x"] = originals.empty() ? json(nullptr) : json(Mean(originals));
  if (pooled_distances.size() >= 2) {
    const NormalInterval iv = MeanInterval(pooled_distances);
    out["shuffle_distance"] = {{"mean", iv.mean},
                               {"half_width", iv.half_width},
                               {"count", iv.count}};
  }
  report.AddTable("violin", ViolinTable(originals, shuffled));
  report.AddTable("shuffle_distance", std::move(dist));
  report.AddTable("shuffle_distance_ci", std::move(ci));
}

// -------------------------------------------------------------- hypothesis

void Hypothesis(const Config& c, Report& report) {
  const HypothesisConfig hc = MakeHypothesisConfig(c);
  const auto records = HypothesisStudy(hc, c.Uint("seed"));
  const GapCurves curves = SummarizeGaps(records, c.Number("hypothesis.delta_star"),
                                         static_cast<int>(c.Int("hypothesis.beta_points")),
                                         static_cast<int>(c.Int("hypothesis.delta_points")));
  std::vector<double> beta, prob;
  for (const auto& p : curves.beta_curve) {
    if (!p.defined) continue;
    beta.push_back(p.threshold);
    prob.push_back(p.probability);
  }
  json& out = report.results();
  out["pairs"] = records.size();
  out["delta_star"] = curves.delta_star;
  const double rho = beta.size() >= 2 ? SpearmanRho(beta, prob) : std::nan("");
  out["beta_curve_spearman"] = std::isnan(rho) ? json(nullptr) : json(rho);
  out["top_beta_probability"] = prob.empty() ? json(nullptr) : json(prob.back());
  const auto& last = curves.delta_curve.back();
  out["final_delta_probability"] = last.defined ? json(last.probability) : json(nullptr);

  Table rec{{"d_star_0", "d_star_dagger", "delta", "d_bar"}, {}};
  for (const auto& r : records) {
    rec.Add({r.d_star_0, r.d_star_dagger, r.delta, r.d_bar.value_or(std::nan(""))});
  }
  report.AddTable("records", std::move(rec));
  report.AddTable("beta_curve", CurveTable(curves.beta_curve));
  report.AddTable("delta_curve", CurveTable(curves.delta_curve));
  report.AddTable("grid", GridTable(curves.grid));
  report.AddTable("gap_scatter", GapScatterTable(records, c.Number("lowess.fraction")));
}

// -------------------------------------------------------------- properties

void Properties(const Config& c, Report& report) {
  const std::uint64_t seed = c.Uint("seed");
  const int n = static_cast<int>(c.Int("model.num_types"));
  const double p_edge = c.Number("model.edge_probability");
  const double tau = c.Number("model.tau_bar");
  const double horizon = c.Number("horizon");
  const auto models = static_cast<std::size_t>(c.Int("properties.models"));
  const int cap = static_cast<int>(c.Int("properties.max_parents"));

  std::int64_t pairs = 0, disagreements = 0, monotone = 0, structural_ok = 0, markovian = 0;
  std::int64_t mixed = 0, mixed_pass = 0, nonneg_degenerate = 0;
  Table bad{{"model", "effect", "cause", "theta", "closed_form", "brute_force"}, {}};
  for (std::size_t m = 0; m < models; ++m) {
    const CausalModel model =
        SampleRandomModel(n, ErdosRenyi{p_edge}, Lambdas(c), tau,
                          DeriveSeed(seed, "monotonicity", m));
    for (int i = 0; i < n; ++i) {
      for (const int j : model.parents(i)) {
        const bool closed = IsMonotonicClosedForm(model, i, j);
        const bool brute = IsMonotonicBruteForce(model, i, j, cap).verdict;
        ++pairs;
        monotone += closed;
        if (closed != brute) {
          ++disagreements;
          bad.Add({static_cast<std::int64_t>(m), std::int64_t{i}, std::int64_t{j},
                   model.theta()(i, j), std::int64_t{closed}, std::int64_t{brute}});
        }
      }
    }
    const auto checks = StructuralChecks(model);
    structural_ok += std::all_of(checks.begin(), checks.end(),
                                 [](const PropertyVerdict& v) { return v.verdict; });
    markovian += IsMarkovian(model);

    const std::uint64_t gs = DeriveSeed(seed, "degeneracy", m);
    if (HasMixedSigns(model)) {
      ++mixed;
      mixed_pass += PassesDegeneracyCheck(GenerateSequence(model, horizon, gs));
    }
    const CausalModel nonneg = model.WithTheta(model.theta().cwiseAbs());
    nonneg_degenerate += !PassesDegeneracyCheck(GenerateSequence(nonneg, horizon, gs));
  }

  const auto configs = static_cast<std::size_t>(c.Int("properties.pns_configs"));
  const int parents = static_cast<int>(c.Int("properties.pns_parents"));
  const double pns_horizon = c.Number("properties.pns_horizon");
  std::vector<double> errors(configs);
  std::vector<PnsEstimate> estimates(configs);
  std::vector<InterventionalPns> oracles(configs);
  ParallelFor(configs, Threads(c), [&](std::size_t k) {
    const CausalModel pm = SampleExogenousPairModel(parents, DeriveSeed(seed, "pns_model", k),
                                                    Lambdas(c), tau);
    const Realization r = GenerateSequence(pm, pns_horizon, DeriveSeed(seed, "pns_sequence", k));
    estimates[k] = EstimatePns(pm, r, 0, 1);
    oracles[k] = InterventionalPnsOracle(pm, 0, 1, pns_horizon, DeriveSeed(seed, "pns_oracle", k));
    errors[k] = std::abs(estimates[k].value - oracles[k].value);
  });
  Table pns{{"config", "estimate", "oracle", "abs_error", "count_flag_1", "count_flag_0",
             "monotone"},
            {}};
  std::int64_t within = 0;
  long long min_cell = std::numeric_limits<long long>::max();
  for (std::size_t k = 0; k < configs; ++k) {
    within += errors[k] <= 0.05;
    min_cell = std::min({min_cell, estimates[k].count_flag_1, estimates[k].count_flag_0});
    pns.Add({static_cast<std::int64_t>(k), estimates[k].value, oracles[k].value, errors[k],
             static_cast<std::int64_t>(estimates[k].count_flag_1),
             static_cast<std::int64_t>(estimates[k].count_flag_0),
             std::int64_t{estimates[k].monotone.value_or(false)}});
  }

  json& out = report.results();
  out["monotonicity"] = {{"models", models},
                         {"pairs", pairs},
                         {"monotone_pairs", monotone},
                         {"disagreements", disagreements}};
  out["structural"] = {{"models_passing", structural_ok}, {"markovian_models", markovian}};
  out["degeneracy"] = {{"mixed_sign_models", mixed},
                       {"mixed_sign_passing", mixed_pass},
                       {"nonnegative_models", models},
                       {"nonnegative_detected", nonneg_degenerate}};
  out["pns"] = {{"configs", configs},
                {"within_0_05", within},
                {"min_cell_count", configs ? json(min_cell) : json(nullptr)}};
  report.AddTable("monotonicity_disagreements", std::move(bad));
  report.AddTable("pns", std::move(pns));
}

// ------------------------------------------------------------------ export

void Export(const Config& c, Report& report, const std::string& out_dir) {
  const ExperimentConfig ec = MakeExperimentConfig(c);
  const auto data_dir = EnsureDir(std::filesystem::path(out_dir) / "datasets");
  const std::string source = c.String("export.source");
  Table files{{"file", "train_rows", "test_rows", "test_cf_rows"}, {}};
  auto record = [&](const Dataset& d, const std::string& name) {
    WriteDataset(d, (data_dir / name).string());
    files.Add({name, static_cast<std::int64_t>(d.RowsOf(Split::kTrain).size()),
               static_cast<std::int64_t>(d.RowsOf(Split::kTest).size()),
               static_cast<std::int64_t>(d.RowsOf(Split::kTestCf).size())});
  };
  if (source == "experiment-a") {
    const auto pairs = static_cast<std::size_t>(c.Int("experiment_a.pairs"));
    for (std::size_t p = 0; p < pairs; ++p) {
      const PairSetup s = MakeExperimentPair(c, p);
      const ExperimentAData data = PrepareExperimentA(s.model_0.model, s.dagger, ec, s.run_seed);
      record(MakeDataset(HeaderFor(s.model_0, ec, data.d_bar),
                         Restrict(data.original.accepted, 0.0, data.tau_split), data.eval_x,
                         data.eval_x_prime),
             Numbered("pair_", p) + ".csv");
    }
  } else {
    const auto runs = static_cast<std::size_t>(c.Int("experiment_b.runs"));
    const int shuffles = static_cast<int>(c.Int("experiment_b.shuffles"));
    for (std::size_t r = 0; r < runs; ++r) {
      const std::uint64_t rs = DeriveSeed(c.Uint("seed"), "run", r);
      const ConfiguredModel m0 = MakeConfiguredModel(c, DeriveSeed(rs, "c0"));
      const ExperimentBData data =
          PrepareExperimentB(m0.model, ec, shuffles, DeriveSeed(rs, "experiment"));
      for (std::size_t k = 0; k < data.eval_shuffled.size(); ++k) {
        record(MakeDataset(HeaderFor(m0, ec, std::nullopt), data.train, data.eval_x,
                           data.eval_shuffled[k]),
               Numbered("run_", r) + Numbered("_shuffle_", k, 2) + ".csv");
      }
    }
  }
  report.results()["source"] = source;
  report.results()["datasets_dir"] = "datasets";
  report.results()["datasets"] = files.rows.size();
  report.AddTable("datasets", std::move(files));
}

}  // namespace

CtigParams MakeCtigParams(const Config& c, std::uint64_t seed) {
  CtigParams params;
  params.num_nodes = static_cast<int>(c.Int("ctig.num_nodes"));
  params.feature_dim = static_cast<int>(c.Int("ctig.feature_dim"));
  params.nu0 = c.Number("ctig.nu0");
  params.nu1 = c.Number("ctig.nu1");
  params.noncausal = static_cast<int>(c.Int("ctig.noncausal"));
  params.lambda_range = Lambdas(c);
  params.tau_bar = c.Number("model.tau_bar");
  params.seeds = CtigSeeds::FromMaster(seed);
  params.Validate();
  return params;
}

ConfiguredModel MakeConfiguredModel(const Config& c, std::uint64_t seed) {
  if (c.String("mode") == "ctig") {
    CtigModel m = BuildCtigModel(MakeCtigParams(c, seed));
    return {std::move(m.model), m.edges};
  }
  return {SampleRandomModel(static_cast<int>(c.Int("model.num_types")),
                            ErdosRenyi{c.Number("model.edge_probability")}, Lambdas(c),
                            c.Number("model.tau_bar"), seed),
          std::nullopt};
}

ExperimentConfig MakeExperimentConfig(const Config& c) {
  ExperimentConfig ec;
  ec.horizon = c.Number("horizon");
  if (!c.IsNull("tau_split")) ec.tau_split = c.Number("tau_split");
  ec.negatives_per_positive = static_cast<int>(c.Int("evaluation.negatives_per_positive"));
  ec.mode = ParseSamplingMode(c.String("evaluation.sampling_mode"));
  ec.metric = ParseMetricKind(c.String("evaluation.metric"));
  ec.distance_iters = static_cast<int>(c.Int("distance.iters"));
  ec.threads = Threads(c);
  ec.Validate();
  return ec;
}

HypothesisConfig MakeHypothesisConfig(const Config& c) {
  HypothesisConfig hc;
  hc.num_types = static_cast<int>(c.Int("model.num_types"));
  hc.edge_probability = c.Number("model.edge_probability");
  hc.horizon = c.Number("horizon");
  hc.pairs = static_cast<int>(c.Int("hypothesis.pairs"));
  hc.star_scale_max = c.Number("hypothesis.star_scale_max");
  hc.dagger_scale_max = c.Number("hypothesis.dagger_scale_max");
  hc.distance_iters = static_cast<int>(c.Int("distance.iters"));
  hc.threads = Threads(c);
  return hc;
}

Report RunCommand(std::string_view command, const Config& config, const std::string& out_dir) {
  const auto& names = ExperimentNames();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw ParameterError("unknown command '" + std::string(command) + "'");
  }
  Report report(std::string(command), config.resolved());
  if (command == "generate") Generate(config, report);
  else if (command == "ctig") Ctig(config, report);
  else if (command == "distance") Distance(config, report);
  else if (command == "variance-study") VarianceStudy(config, report);
  else if (command == "experiment-a") ExperimentA(config, report, out_dir);
  else if (command == "experiment-b") ExperimentB(config, report);
  else if (command == "hypothesis") Hypothesis(config, report);
  else if (command == "properties") Properties(config, report);
  else if (command == "export") Export(config, report, out_dir);
  report.Write(out_dir);
  return report;
}

}  // namespace ctig
