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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctigbench/errors.h"
#include "gtest/gtest.h"

namespace ctig {
namespace {

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Table, RendersCsvWithHeader) {
  Table t{{"a", "b", "c"}, {}};
  t.Add({std::int64_t{3}, 0.5, std::string("x")});
  t.Add({std::int64_t{-1}, std::nan(""), std::string()});
  EXPECT_EQ(t.Render(), "a,b,c\n3,0.5,x\n-1,nan,\n");
  EXPECT_THROW(t.Add({std::int64_t{1}}), ParameterError);
}

TEST(Report, EmptyRecordsGiveZeroRowTables) {
  Report r("hypothesis", nlohmann::json::object());
  r.AddTable("gap_scatter", GapScatterTable({}, 0.95));
  r.AddTable("beta_curve", CurveTable({}));
  r.AddTable("variance", VarianceTable({}));
  const auto doc = r.Document();
  EXPECT_EQ(doc.at("format_version"), kReportFormatVersion);
  EXPECT_EQ(doc.at("tables").at("gap_scatter").at("rows"), 0);
  EXPECT_EQ(r.tables().at("gap_scatter").Render(), "d_bar,delta,lowess\n");
}

TEST(Report, GridHasOneRowPerCellWithCounts) {
  std::vector<GapRecord> records;
  for (int k = 0; k < 40; ++k) {
    records.push_back(PerformanceGap(0.01 * (k % 30), 0.01 * ((k * 7) % 40), MetricKind::kAccuracy,
                                     0.005 * k));
  }
  const GapCurves curves = SummarizeGaps(records, 0.2, 10, 20);
  const Table grid = GridTable(curves.grid);
  EXPECT_EQ(grid.rows.size(), 10u * 20u);
  EXPECT_EQ(grid.columns, (std::vector<std::string>{"beta", "delta_star", "probability",
                                                    "count", "defined"}));
  for (std::size_t k = 0; k < grid.rows.size(); ++k) {
    const auto& cell = curves.grid[k];
    EXPECT_EQ(std::get<std::int64_t>(grid.rows[k][3]), cell.count);
    if (!cell.defined) EXPECT_TRUE(std::isnan(std::get<double>(grid.rows[k][2])));
  }
}

TEST(Report, GapScatterCarriesLowess) {
  std::vector<GapRecord> records;
  for (int k = 0; k < 10; ++k) {
    records.push_back(PerformanceGap(0.1, 0.1 + 0.02 * k, MetricKind::kAccuracy, 0.05 * k));
  }
  records.push_back(PerformanceGap(0.1, 0.2));  // no d_bar: skipped
  const Table t = GapScatterTable(records, 0.95);
  ASSERT_EQ(t.rows.size(), 10u);
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(std::get<double>(t.rows[k][2]), 0.02 * k, 1e-9);
  }
}

TEST(Report, ViolinRows) {
  const std::vector<double> original = {0.7, 0.8};
  const std::vector<std::vector<double>> shuffled = {{0.5, 0.6}, {0.55, 0.65}};
  const Table t = ViolinTable(original, shuffled);
  EXPECT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(std::get<std::string>(t.rows[2][0]), "shuffle_0");
}

TEST(Report, WriteIsByteIdenticalAcrossRuns) {
  const auto base = std::filesystem::temp_directory_path() / "ctig_report_test";
  std::filesystem::remove_all(base);
  auto make = [] {
    Report r("distance", {{"seed", 1}});
    r.results()["mean"] = 0.123456789;
    r.results()["list"] = {1, 2, 3};
    Table t{{"iter", "distance"}, {}};
    t.Add({std::int64_t{0}, 0.1});
    r.AddTable("draws", t);
    return r;
  };
  make().Write((base / "a").string());
  make().Write((base / "b").string());
  EXPECT_EQ(Slurp(base / "a" / "report.json"), Slurp(base / "b" / "report.json"));
  EXPECT_EQ(Slurp(base / "a" / "draws.csv"), Slurp(base / "b" / "draws.csv"));
  const auto doc = nlohmann::json::parse(Slurp(base / "a" / "report.json"));
  EXPECT_EQ(doc.at("command"), "distance");
  EXPECT_EQ(doc.at("config").at("seed"), 1);
  EXPECT_EQ(doc.at("tables").at("draws").at("file"), "draws.csv");
}

TEST(Report, Errors) {
  Report r("x", {});
  r.AddTable("t", Table{{"a"}, {}});
  EXPECT_THROW(r.AddTable("t", Table{{"a"}, {}}), ParameterError);
  EXPECT_THROW(r.AddTable("Bad-Name", Table{{"a"}, {}}), ParameterError);
  EXPECT_THROW(r.AddTable("report", Table{{"a"}, {}}), ParameterError);
  EXPECT_THROW(r.Write("/proc/ctig-no-such-dir/x"), IoError);
}

}  // namespace
}  // namespace ctig
