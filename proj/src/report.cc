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


#include "ctigbench/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctigbench/errors.h"
#include "ctigbench/lowess.h"

namespace ctig {

namespace {

std::string RenderCell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const double d = std::get<double>(c);
  if (std::isnan(d)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", d);
  return buf;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("cannot write " + path.string());
}

}  // namespace

void Table::Add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ParameterError("table row has " + std::to_string(row.size()) + " cells for " +
                         std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string Table::Render() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << RenderCell(row[k]);
    out << '\n';
  }
  return out.str();
}

Report::Report(std::string command, nlohmann::json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void Report::AddTable(const std::string& name, Table table) {
  if (name.empty() || name == "report") throw ParameterError("bad table name '" + name + "'");
  for (const char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) {
      throw ParameterError("bad table name '" + name + "'");
    }
  }
  if (!tables_.emplace(name, std::move(table)).second) {
    throw ParameterError("duplicate table '" + name + "'");
  }
}

nlohmann::json Report::Document() const {
  nlohmann::json doc;
  doc["format_version"] = kReportFormatVersion;
  doc["command"] = command_;
  doc["config"] = config_;
  doc["results"] = results_;
  nlohmann::json tables = nlohmann::json::object();
  for (const auto& [name, table] : tables_) {
    tables[name] = {{"file", name + ".csv"}, {"rows", table.rows.size()}};
  }
  doc["tables"] = tables;
  return doc;
}

std::string Report::Render() const { return Document().dump(2) + "\n"; }

void Report::Write(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  WriteFile(root / "report.json", Render());
  for (const auto& [name, table] : tables_) WriteFile(root / (name + ".csv"), table.Render());
}

Table VarianceTable(std::span<const VarianceRow> rows) {
  Table t{{"effective_size", "horizon", "iters", "replications", "mean", "variance"}, {}};
  for (const auto& r : rows) {
    t.Add({r.effective_size, r.horizon, std::int64_t{r.iters}, std::int64_t{r.replications},
           r.mean, r.variance});
  }
  return t;
}

Table GapScatterTable(std::span<const GapRecord> records, double fraction) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    if (!r.d_bar) continue;
    x.push_back(*r.d_bar);
    y.push_back(r.delta);
  }
  std::vector<double> smooth(x.size(), std::nan(""));
  if (x.size() >= 3) smooth = Lowess(x, y, fraction);
  Table t{{"d_bar", "delta", "lowess"}, {}};
  for (std::size_t k = 0; k < x.size(); ++k) t.Add({x[k], y[k], smooth[k]});
  return t;
}

Table ViolinTable(std::span<const double> original,
                  std::span<const std::vector<double>> shuffled) {
  Table t{{"test_set", "run", "metric"}, {}};
  for (std::size_t r = 0; r < original.size(); ++r) {
    t.Add({std::string("original"), static_cast<std::int64_t>(r), original[r]});
  }
  for (std::size_t r = 0; r < shuffled.size(); ++r) {
    for (std::size_t c = 0; c < shuffled[r].size(); ++c) {
      t.Add({"shuffle_" + std::to_string(c), static_cast<std::int64_t>(r), shuffled[r][c]});
    }
  }
  return t;
}

Table CurveTable(std::span<const CurvePoint> curve) {
  Table t{{"threshold", "probability", "count", "defined"}, {}};
  for (const auto& p : curve) {
    t.Add({p.threshold, p.defined ? p.probability : std::nan(""),
           std::int64_t{p.count}, std::int64_t{p.defined}});
  }
  return t;
}

Table GridTable(std::span<const GridCell> grid) {
  Table t{{"beta", "delta_star", "probability", "count", "defined"}, {}};
  for (const auto& c : grid) {
    t.Add({c.beta, c.delta_star, c.defined ? c.probability : std::nan(""),
           std::int64_t{c.count}, std::int64_t{c.defined}});
  }
  return t;
}

}  // namespace ctig
