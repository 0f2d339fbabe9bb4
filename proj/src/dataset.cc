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


#include "ctigbench/dataset.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "ctigbench/ctig_builder.h"
#include "ctigbench/errors.h"

namespace ctig {

namespace {

constexpr const char* kMagic = "# ctigbench-dataset";
constexpr const char* kColumns = "split,id,src,dst,timestamp,label";
constexpr const char* kScoreColumns = "id,timestamp,score";

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream s(line);
  while (std::getline(s, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string StripCr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::optional<double> ParseDouble(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<long> ParseLong(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno == ERANGE) return std::nullopt;
  return v;
}

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

void AppendEval(std::vector<DatasetRow>& rows, Split split, const EvaluationSet& eval) {
  for (const EvalItem& item : eval.items) {
    DatasetRow r;
    r.split = split;
    r.id = item.type;
    r.time = item.time;
    r.label = item.label;
    rows.push_back(r);
  }
}

void CheckHeader(const DatasetHeader& h) {
  if (h.format_version != kDatasetFormatVersion) {
    throw ParameterError("unsupported dataset format version " +
                         std::to_string(h.format_version));
  }
  if (h.num_types < 1) throw ParameterError("dataset: n_types must be positive");
  if ((h.mode == DatasetMode::kCtig) != h.num_nodes.has_value()) {
    throw ParameterError("dataset: n_nodes is required in ctig mode and only there");
  }
  if (h.num_nodes && EdgeSpace(*h.num_nodes).size() != h.num_types) {
    throw ParameterError("dataset: n_types must equal n_nodes(n_nodes-1)/2");
  }
  if (!(h.horizon > 0.0) || !(h.tau_bar > 0.0)) {
    throw ParameterError("dataset: horizon and tau_bar must be positive");
  }
  if (!(0.0 <= h.train_begin && h.train_begin <= h.train_end &&
        h.train_end <= h.test_begin && h.test_begin <= h.test_end &&
        h.test_end <= h.horizon)) {
    throw ParameterError("dataset: split bounds must be ordered within [0, horizon]");
  }
}

}  // namespace

std::string_view ToString(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
    case Split::kTestCf: return "test_cf";
  }
  return "";
}

Split ParseSplit(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "test") return Split::kTest;
  if (text == "test_cf") return Split::kTestCf;
  throw FormatError("unknown split '" + std::string(text) + "'");
}

std::string_view ToString(DatasetMode mode) {
  return mode == DatasetMode::kCtig ? "ctig" : "ces";
}

DatasetMode ParseDatasetMode(std::string_view text) {
  if (text == "ces") return DatasetMode::kCes;
  if (text == "ctig") return DatasetMode::kCtig;
  throw FormatError("unknown dataset mode '" + std::string(text) + "'");
}

std::string RenderTime(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", t);
  return buf;
}

std::vector<DatasetRow> Dataset::RowsOf(Split split) const {
  std::vector<DatasetRow> out;
  for (const auto& r : rows) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

EventSequence Dataset::TrainSequence() const {
  EventSequence s;
  s.start = header.train_begin;
  s.horizon = header.train_end;
  for (const auto& r : rows) {
    if (r.split == Split::kTrain) s.events.push_back({r.id, r.time});
  }
  return s;
}

EvaluationSet Dataset::EvalSet(Split split) const {
  if (split == Split::kTrain) throw ParameterError("the train split carries no labels");
  EvaluationSet e;
  e.window_begin = header.test_begin;
  e.window_end = header.test_end;
  e.mode = header.sampling_mode;
  for (const auto& r : rows) {
    if (r.split == split) e.items.push_back({r.id, r.time, r.label.value_or(0)});
  }
  return e;
}

Dataset MakeDataset(const DatasetHeader& header, const EventSequence& train,
                    const EvaluationSet& test, const EvaluationSet& test_cf) {
  CheckHeader(header);
  Dataset d;
  d.header = header;
  for (const Event& e : train.events) {
    DatasetRow r;
    r.split = Split::kTrain;
    r.id = e.type;
    r.time = e.time;
    d.rows.push_back(r);
  }
  AppendEval(d.rows, Split::kTest, test);
  AppendEval(d.rows, Split::kTestCf, test_cf);
  std::optional<EdgeSpace> edges;
  if (header.num_nodes) edges.emplace(*header.num_nodes);
  for (auto& r : d.rows) {
    if (r.id < 0 || r.id >= header.num_types) {
      throw ParameterError("dataset: event id " + std::to_string(r.id) + " out of range");
    }
    if (edges) {
      const auto [a, b] = edges->Pair(r.id);
      r.src = a;
      r.dst = b;
    }
  }
  return d;
}

std::string RenderDataset(const Dataset& d) {
  const DatasetHeader& h = d.header;
  std::ostringstream out;
  out << kMagic << '\n';
  out << "# format_version=" << h.format_version << '\n';
  out << "# mode=" << ToString(h.mode) << '\n';
  out << "# n_types=" << h.num_types << '\n';
  if (h.num_nodes) out << "# n_nodes=" << *h.num_nodes << '\n';
  out << "# horizon=" << RenderTime(h.horizon) << '\n';
  out << "# tau_bar=" << RenderTime(h.tau_bar) << '\n';
  out << "# train=" << RenderTime(h.train_begin) << ',' << RenderTime(h.train_end) << '\n';
  out << "# test=" << RenderTime(h.test_begin) << ',' << RenderTime(h.test_end) << '\n';
  out << "# sampling_mode=" << ToString(h.sampling_mode) << '\n';
  if (h.d_bar) out << "# d_bar=" << RenderTime(*h.d_bar) << '\n';
  out << kColumns << '\n';
  for (const Split split : {Split::kTrain, Split::kTest, Split::kTestCf}) {
    for (const auto& r : d.rows) {
      if (r.split != split) continue;
      out << ToString(r.split) << ',' << r.id << ',';
      if (r.src) out << *r.src;
      out << ',';
      if (r.dst) out << *r.dst;
      out << ',' << RenderTime(r.time) << ',';
      if (r.label) out << *r.label;
      out << '\n';
    }
  }
  return out.str();
}

void WriteDataset(const Dataset& dataset, const std::string& path) {
  const std::string text = RenderDataset(dataset);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out.flush()) throw IoError("cannot write " + path);
}

Dataset ParseDataset(std::istream& in) {
  Dataset d;
  DatasetHeader& h = d.header;
  std::string line;
  std::size_t n = 0;
  if (!std::getline(in, line) || StripCr(line) != kMagic) {
    Fail(1, "missing '" + std::string(kMagic) + "' header");
  }
  ++n;
  std::map<std::string, std::string> meta;
  bool columns = false;
  while (std::getline(in, line)) {
    ++n;
    line = StripCr(line);
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) Fail(n, "header line without '='");
      const std::string key = line.substr(2, eq - 2);
      if (!meta.emplace(key, line.substr(eq + 1)).second) Fail(n, "duplicate header " + key);
      continue;
    }
    if (line != kColumns) Fail(n, "expected column line '" + std::string(kColumns) + "'");
    columns = true;
    break;
  }
  if (!columns) Fail(n, "missing column line");

  auto take = [&](const std::string& key, bool required) -> std::optional<std::string> {
    const auto it = meta.find(key);
    if (it == meta.end()) {
      if (required) Fail(n, "missing header '" + key + "'");
      return std::nullopt;
    }
    std::string v = it->second;
    meta.erase(it);
    return v;
  };
  auto number = [&](const std::string& key, const std::string& text) {
    const auto v = ParseDouble(text);
    if (!v) Fail(n, "header '" + key + "' is not a number");
    return *v;
  };
  auto integer = [&](const std::string& key, const std::string& text) {
    const auto v = ParseLong(text);
    if (!v) Fail(n, "header '" + key + "' is not an integer");
    return static_cast<int>(*v);
  };
  auto bounds = [&](const std::string& key) {
    const auto parts = SplitFields(*take(key, true));
    if (parts.size() != 2) Fail(n, "header '" + key + "' must be 'begin,end'");
    return std::pair{number(key, parts[0]), number(key, parts[1])};
  };

  h.format_version = integer("format_version", *take("format_version", true));
  if (h.format_version != kDatasetFormatVersion) {
    Fail(n, "format version " + std::to_string(h.format_version) + " is not supported");
  }
  try {
    h.mode = ParseDatasetMode(*take("mode", true));
    h.sampling_mode = ParseSamplingMode(*take("sampling_mode", true));
  } catch (const std::exception& e) {
    Fail(n, e.what());
  }
  h.num_types = integer("n_types", *take("n_types", true));
  if (auto v = take("n_nodes", false)) h.num_nodes = integer("n_nodes", *v);
  h.horizon = number("horizon", *take("horizon", true));
  h.tau_bar = number("tau_bar", *take("tau_bar", true));
  std::tie(h.train_begin, h.train_end) = bounds("train");
  std::tie(h.test_begin, h.test_end) = bounds("test");
  if (auto v = take("d_bar", false)) h.d_bar = number("d_bar", *v);
  if (!meta.empty()) Fail(n, "unknown header '" + meta.begin()->first + "'");
  try {
    CheckHeader(h);
  } catch (const ParameterError& e) {
    Fail(n, e.what());
  }

  std::optional<EdgeSpace> edges;
  if (h.num_nodes) edges.emplace(*h.num_nodes);
  int last_split = -1;
  double last_time = 0.0;
  while (std::getline(in, line)) {
    ++n;
    line = StripCr(line);
    if (line.empty()) continue;
    const auto f = SplitFields(line);
    if (f.size() != 6) Fail(n, "expected 6 fields, got " + std::to_string(f.size()));
    DatasetRow r;
    try {
      r.split = ParseSplit(f[0]);
    } catch (const FormatError& e) {
      Fail(n, e.what());
    }
    const auto id = ParseLong(f[1]);
    if (!id || *id < 0 || *id >= h.num_types) Fail(n, "bad id '" + f[1] + "'");
    r.id = static_cast<int>(*id);
    const auto t = ParseDouble(f[4]);
    if (!t) Fail(n, "bad timestamp '" + f[4] + "'");
    r.time = *t;

    if (edges) {
      const auto src = ParseLong(f[2]);
      const auto dst = ParseLong(f[3]);
      if (!src || !dst) Fail(n, "ctig rows need src and dst");
      const auto [a, b] = edges->Pair(r.id);
      if (!((*src == a && *dst == b) || (*src == b && *dst == a))) {
        Fail(n, "src,dst " + f[2] + "," + f[3] + " do not match edge id " + f[1]);
      }
      r.src = static_cast<int>(*src);
      r.dst = static_cast<int>(*dst);
    } else if (!f[2].empty() || !f[3].empty()) {
      Fail(n, "src/dst are only allowed in ctig mode");
    }

    if (r.split == Split::kTrain) {
      if (!f[5].empty()) Fail(n, "train rows carry no label");
      if (r.time < h.train_begin || r.time >= h.train_end) Fail(n, "train row outside window");
    } else {
      const auto label = ParseLong(f[5]);
      if (!label || (*label != 0 && *label != 1)) Fail(n, "evaluation rows need label 0 or 1");
      r.label = static_cast<int>(*label);
      if (r.time < h.test_begin || r.time >= h.test_end) Fail(n, "test row outside window");
    }

    const int s = static_cast<int>(r.split);
    if (s < last_split) Fail(n, "splits must appear in order train, test, test_cf");
    if (s == last_split && r.time < last_time) Fail(n, "rows are not time-sorted");
    last_split = s;
    last_time = r.time;
    d.rows.push_back(r);
  }
  return d;
}

Dataset ReadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return ParseDataset(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string RenderScores(const EvaluationSet& eval, std::span<const double> scores) {
  if (scores.size() != eval.items.size()) {
    throw ParameterError("RenderScores: one score per evaluation item is required");
  }
  std::ostringstream out;
  out << kScoreColumns << '\n';
  for (std::size_t k = 0; k < scores.size(); ++k) {
    out << eval.items[k].type << ',' << RenderTime(eval.items[k].time) << ','
        << RenderTime(scores[k]) << '\n';
  }
  return out.str();
}

void WriteScores(const std::string& path, const EvaluationSet& eval,
                 std::span<const double> scores) {
  const std::string text = RenderScores(eval, scores);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out.flush()) throw IoError("cannot write " + path);
}

std::vector<double> ParseScores(std::istream& in, const EvaluationSet& expected) {
  using Key = std::pair<int, std::string>;
  auto describe = [](const Key& k) {
    return "(id " + std::to_string(k.first) + ", timestamp " + k.second + ")";
  };
  // Items sharing a key (a positive and its negatives never do, since they
  // differ in id) would be ambiguous, so they are rejected up front.
  std::map<Key, std::size_t> slot;
  for (std::size_t k = 0; k < expected.items.size(); ++k) {
    const Key key{expected.items[k].type, RenderTime(expected.items[k].time)};
    if (!slot.emplace(key, k).second) {
      throw FormatError("evaluation set has duplicate key " + describe(key));
    }
  }

  std::string line;
  std::size_t n = 1;
  if (!std::getline(in, line) || StripCr(line) != kScoreColumns) {
    Fail(1, "expected header '" + std::string(kScoreColumns) + "'");
  }
  std::vector<double> scores(expected.items.size());
  std::vector<bool> seen(expected.items.size(), false);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++n;
    line = StripCr(line);
    if (line.empty()) continue;
    const auto f = SplitFields(line);
    if (f.size() != 3) Fail(n, "expected 3 fields");
    const auto id = ParseLong(f[0]);
    const auto t = ParseDouble(f[1]);
    const auto score = ParseDouble(f[2]);
    if (!id || !t || !score) Fail(n, "malformed row '" + line + "'");
    if (*score < 0.0 || *score > 1.0) {
      Fail(n, "score " + f[2] + " outside [0, 1]");
    }
    const Key key{static_cast<int>(*id), RenderTime(*t)};
    const auto it = slot.find(key);
    if (it == slot.end()) Fail(n, "unmatched key " + describe(key));
    if (seen[it->second]) Fail(n, "duplicate key " + describe(key));
    seen[it->second] = true;
    scores[it->second] = *score;
    ++rows;
  }
  if (rows != expected.items.size()) {
    for (const auto& [key, k] : slot) {
      if (!seen[k]) {
        throw FormatError("missing score for " + describe(key) + " (" +
                          std::to_string(rows) + " rows for " +
                          std::to_string(expected.items.size()) + " items)");
      }
    }
  }
  return scores;
}

std::vector<double> ReadScores(const std::string& path, const EvaluationSet& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return ParseScores(in, expected);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace ctig
