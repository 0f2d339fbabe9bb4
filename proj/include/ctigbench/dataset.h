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


// Line-oriented dataset files carrying a train sequence and labelled
// evaluation splits to an external predictor, and the `id,timestamp,score`
// files it returns. Layout:
//
//   # ctigbench-dataset
//   # format_version=1
//   # mode=ctig
//   # ... one key=value per line
//   split,id,src,dst,timestamp,label
//   train,3,0,4,0.123456789,
//   test,3,0,4,600.5,1
//
// src/dst are filled only in ctig mode; labels only on evaluation splits.
// Timestamps are rendered with 9 significant digits.

#ifndef CTIGBENCH_DATASET_H_
#define CTIGBENCH_DATASET_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctigbench/causal_model.h"
#include "ctigbench/counterfactual.h"

namespace ctig {

inline constexpr int kDatasetFormatVersion = 1;

enum class Split { kTrain, kTest, kTestCf };
std::string_view ToString(Split split);
Split ParseSplit(std::string_view text);

enum class DatasetMode { kCes, kCtig };
std::string_view ToString(DatasetMode mode);
DatasetMode ParseDatasetMode(std::string_view text);

struct DatasetHeader {
  int format_version = kDatasetFormatVersion;
  DatasetMode mode = DatasetMode::kCes;
  int num_types = 0;
  // Present iff mode == kCtig; num_types must then be n(n-1)/2.
  std::optional<int> num_nodes;
  double horizon = 0.0;
  double tau_bar = 1.0;
  double train_begin = 0.0;
  double train_end = 0.0;
  double test_begin = 0.0;
  double test_end = 0.0;
  SamplingMode sampling_mode = SamplingMode::kTransductive;
  std::optional<double> d_bar;
};

struct DatasetRow {
  Split split = Split::kTrain;
  int id = 0;
  std::optional<int> src;
  std::optional<int> dst;
  double time = 0.0;
  std::optional<int> label;
};

struct Dataset {
  DatasetHeader header;
  std::vector<DatasetRow> rows;

  std::vector<DatasetRow> RowsOf(Split split) const;
  // Train rows as an event sequence on [train_begin, train_end).
  EventSequence TrainSequence() const;
  // Evaluation rows of `split` as an evaluation set.
  EvaluationSet EvalSet(Split split) const;
};

// Timestamp rendering shared by datasets and score files.
std::string RenderTime(double t);

// Assembles rows from a train sequence and the two evaluation sets; fills
// src/dst from the edge numbering in ctig mode. Throws ParameterError on
// inconsistent metadata.
Dataset MakeDataset(const DatasetHeader& header, const EventSequence& train,
                    const EvaluationSet& test, const EvaluationSet& test_cf);

std::string RenderDataset(const Dataset& dataset);
void WriteDataset(const Dataset& dataset, const std::string& path);

// Parses and validates. Throws FormatError naming the line on any problem.
Dataset ParseDataset(std::istream& in);
Dataset ReadDataset(const std::string& path);

// Score files: header `id,timestamp,score`, one row per evaluation item.
std::string RenderScores(const EvaluationSet& eval, std::span<const double> scores);
void WriteScores(const std::string& path, const EvaluationSet& eval,
                 std::span<const double> scores);

// Aligns a score file to `expected` by (id, rendered timestamp). Rows may
// come in any order. Throws FormatError on a missing, unmatched or duplicate
// key, a cardinality mismatch, or a score outside [0, 1].
std::vector<double> ParseScores(std::istream& in, const EvaluationSet& expected);
std::vector<double> ReadScores(const std::string& path, const EvaluationSet& expected);

}  // namespace ctig

#endif  // CTIGBENCH_DATASET_H_
