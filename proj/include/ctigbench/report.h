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


// Result reports: one versioned JSON document per run plus plain CSV
// tables holding the data behind each plot. Output depends only on the
// inputs, so identical runs produce identical bytes.

#ifndef CTIGBENCH_REPORT_H_
#define CTIGBENCH_REPORT_H_

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ctigbench/counterfactual.h"
#include "ctigbench/model_distance.h"

namespace ctig {

inline constexpr int kReportFormatVersion = 1;

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws ParameterError when the row width does not match the columns.
  void Add(std::vector<Cell> row);
  // CSV with a header line; doubles rendered with 12 significant digits,
  // NaN as "nan".
  std::string Render() const;
};

class Report {
 public:
  Report(std::string command, nlohmann::json config);

  nlohmann::json& results() { return results_; }
  const nlohmann::json& results() const { return results_; }

  // Adds a table written as <name>.csv next to the report. Names must be
  // unique and consist of [a-z0-9_].
  void AddTable(const std::string& name, Table table);
  const std::map<std::string, Table>& tables() const { return tables_; }

  // {format_version, command, config, results, tables}.
  nlohmann::json Document() const;
  std::string Render() const;

  // Writes report.json and every table into `dir`, creating it if needed.
  // Throws IoError when anything cannot be written.
  void Write(const std::string& dir) const;

 private:
  std::string command_;
  nlohmann::json config_;
  nlohmann::json results_ = nlohmann::json::object();
  std::map<std::string, Table> tables_;
};

// Plot-data tables.
// effective_size, horizon, iters, replications, mean, variance
Table VarianceTable(std::span<const VarianceRow> rows);
// d_bar, delta, lowess (the smoothed value at d_bar); records lacking d_bar
// are skipped. The lowess column is empty (nan) with fewer than 3 points.
Table GapScatterTable(std::span<const GapRecord> records, double fraction);
// test_set, run, metric: one row per metric sample.
Table ViolinTable(std::span<const double> original,
                  std::span<const std::vector<double>> shuffled);
// threshold, probability, count, defined
Table CurveTable(std::span<const CurvePoint> curve);
// beta, delta_star, probability, count, defined
Table GridTable(std::span<const GridCell> grid);

}  // namespace ctig

#endif  // CTIGBENCH_REPORT_H_
