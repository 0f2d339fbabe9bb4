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


#include "ctigbench/properties.h"

#include <cmath>

#include "ctigbench/ctig_builder.h"
#include "ctigbench/errors.h"
#include "gtest/gtest.h"

namespace ctig {
namespace {

CausalModel FromTheta(const Eigen::MatrixXd& theta, double rate = 1.0) {
  return CausalModel(std::vector<double>(theta.rows(), rate), theta, 1.0);
}

// The monotonicity condition for one subset, evaluated directly.
bool Violates(const CausalModel& m, int i, int j, const std::vector<int>& c) {
  double s = 0;
  for (const int k : c) s += m.theta(i, k);
  return s >= 0 && m.theta(i, j) + s < 0;
}

TEST(Monotonicity, ClosedFormExamples) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(3, 3);
  theta(0, 1) = 0.7;
  theta(0, 2) = -0.1;
  const CausalModel m = FromTheta(theta);
  EXPECT_TRUE(IsMonotonicClosedForm(m, 0, 1));
  EXPECT_FALSE(IsMonotonicClosedForm(m, 0, 2));
  EXPECT_THROW(IsMonotonicClosedForm(m, 0, 0), ParameterError);
  EXPECT_THROW(IsMonotonicBruteForce(m, 1, 0), ParameterError);
}

TEST(Monotonicity, NegativeWeightFailsAtEmptySubset) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(4, 4);
  theta(0, 1) = -0.1;
  theta(0, 2) = 0.9;
  theta(0, 3) = -0.5;
  const PropertyVerdict v = IsMonotonicBruteForce(FromTheta(theta), 0, 1);
  EXPECT_FALSE(v.verdict);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(v.witness->empty());
  EXPECT_EQ(v.property, "monotonic");
  EXPECT_EQ(v.effect, 0);
  EXPECT_EQ(v.cause, 1);
}

TEST(Monotonicity, NonnegativeWeightAlwaysHolds) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(5, 5);
  theta(0, 1) = 0.0001;
  theta(0, 2) = -1.0;
  theta(0, 3) = 1.0;
  theta(0, 4) = -0.3;
  const PropertyVerdict v = IsMonotonicBruteForce(FromTheta(theta), 0, 1);
  EXPECT_TRUE(v.verdict);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(Monotonicity, BruteForceAgreesWithClosedForm) {
  int disagreements = 0, checked = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);  // |P_i| <= 10
    const CausalModel m = SampleRandomModel(n, ErdosRenyi{0.6}, {}, 1.0, seed);
    for (int i = 0; i < n; ++i) {
      for (const int j : m.parents(i)) {
        const PropertyVerdict v = IsMonotonicBruteForce(m, i, j);
        disagreements += v.verdict != IsMonotonicClosedForm(m, i, j);
        ++checked;
        if (!v.verdict) {
          ASSERT_TRUE(v.witness.has_value());
          EXPECT_TRUE(Violates(m, i, j, *v.witness));
        }
      }
    }
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(checked, 1000);
}

TEST(Monotonicity, CapacityLimit) {
  const CausalModel m = SampleRandomModel(22, ErdosRenyi{1.0}, {}, 1.0, 1);
  EXPECT_THROW(IsMonotonicBruteForce(m, 0, 1), CapacityError);
  const CausalModel small = SampleRandomModel(6, ErdosRenyi{1.0}, {}, 1.0, 1);
  EXPECT_THROW(IsMonotonicBruteForce(small, 0, 1, 5), CapacityError);
  EXPECT_NO_THROW(IsMonotonicBruteForce(small, 0, 1, 6));
}

TEST(Markovian, DiagonalSupport) {
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
  diag(0, 0) = -0.5;
  diag(2, 2) = 0.3;
  EXPECT_TRUE(IsMarkovian(FromTheta(diag)));
  EXPECT_TRUE(IsMarkovian(FromTheta(Eigen::MatrixXd::Zero(3, 3))));
  diag(1, 2) = 0.1;
  EXPECT_FALSE(IsMarkovian(FromTheta(diag)));
  EXPECT_TRUE(IsMarkovian(SampleRandomModel(4, IdentityGraph{}, {}, 1.0, 2)));
}

TEST(StructuralChecks, HoldForEveryConstruction) {
  std::vector<CausalModel> models = {FromTheta(Eigen::MatrixXd::Zero(3, 3)),
                                     BuildCtigModel(CtigParams::Reference(3)).model};
  for (std::uint64_t s = 0; s < 20; ++s) {
    models.push_back(SampleRandomModel(6, ErdosRenyi{0.5}, {}, 1.0, s));
  }
  for (const CausalModel& m : models) {
    const auto verdicts = StructuralChecks(m);
    ASSERT_EQ(verdicts.size(), 2u);
    for (const auto& v : verdicts) {
      EXPECT_TRUE(v.verdict) << v.property << ": " << v.evidence;
      EXPECT_FALSE(v.evidence.empty());
    }
  }
}

// Independent estimate by linear scans.
double PnsByScan(const Realization& r, int i, int j, double tau) {
  double n1 = 0, n0 = 0, a1 = 0, a0 = 0;
  for (const double t : r.triggers[i].times) {
    bool x = false, flag = false;
    for (const Event& e : r.accepted.events) {
      x |= e.type == i && e.time == t;
      flag |= e.type == j && e.time < t && e.time >= t - tau;
    }
    (flag ? n1 : n0) += 1;
    (flag ? a1 : a0) += x;
  }
  return a1 / n1 - a0 / n0;
}

TEST(EstimatePns, MatchesLinearScan) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CausalModel m = SampleExogenousPairModel(3, seed);
    const Realization r = GenerateSequence(m, 300.0, seed);
    const PnsEstimate e = EstimatePns(m, r, 0, 1);
    EXPECT_NEAR(e.value, PnsByScan(r, 0, 1, 1.0), 1e-12);
    EXPECT_EQ(e.count_flag_0 + e.count_flag_1,
              static_cast<long long>(r.triggers[0].times.size()));
    ASSERT_TRUE(e.monotone.has_value());
    EXPECT_TRUE(*e.monotone);
    EXPECT_GE(e.value, -1.0);
    EXPECT_LE(e.value, 1.0);
  }
}

TEST(EstimatePns, SingleParentEnumeration) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(2, 2);
  theta(0, 1) = 0.6;
  const CausalModel pos = FromTheta(theta);
  const Realization rp = GenerateSequence(pos, 2000.0, 1);
  EXPECT_EQ(EstimatePns(pos, rp, 0, 1).value, 0.0);
  EXPECT_EQ(InterventionalPnsOracle(pos, 0, 1, 2000.0, 1).value, 0.0);

  theta(0, 1) = -0.6;
  const CausalModel neg = FromTheta(theta);
  const Realization rn = GenerateSequence(neg, 2000.0, 1);
  const PnsEstimate e = EstimatePns(neg, rn, 0, 1);
  EXPECT_EQ(e.value, -1.0);
  EXPECT_FALSE(*e.monotone);
  const InterventionalPns o = InterventionalPnsOracle(neg, 0, 1, 2000.0, 1);
  EXPECT_EQ(o.p_do_1, 0.0);
  EXPECT_EQ(o.p_do_0, 1.0);
  EXPECT_EQ(o.value, -1.0);
}

TEST(EstimatePns, TwoParentsAgreeWithIntervention) {
  // Both parents are roots, so their flags are independent.
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(3, 3);
  theta(0, 1) = 0.5;
  theta(0, 2) = -0.8;
  const CausalModel m = FromTheta(theta);
  const Realization r = GenerateSequence(m, 1e4, 5);
  const PnsEstimate e = EstimatePns(m, r, 0, 1);
  const InterventionalPns o = InterventionalPnsOracle(m, 0, 1, 1e4, 6);
  EXPECT_NEAR(e.value, o.value, 0.05);
  // Either forced value accepts exactly when X'_2 = 0, so the paired runs
  // coincide.
  EXPECT_EQ(o.value, 0.0);

  // With theta(0, 2) = -0.3, do(1) always accepts and do(0) accepts iff
  // X'_2 = 0, which for a unit-rate root and unit window has probability e^-1.
  theta(0, 2) = -0.3;
  const CausalModel m2 = FromTheta(theta);
  const InterventionalPns o2 = InterventionalPnsOracle(m2, 0, 1, 1e4, 7);
  EXPECT_EQ(o2.p_do_1, 1.0);
  EXPECT_NEAR(o2.value, 1.0 - std::exp(-1.0), 0.03);
  const PnsEstimate e2 = EstimatePns(m2, GenerateSequence(m2, 1e4, 8), 0, 1);
  EXPECT_NEAR(e2.value, o2.value, 0.05);
}

TEST(InterventionalPns, NonParentIsNoOp) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(3, 3);
  theta(0, 2) = -0.5;
  const CausalModel m = FromTheta(theta);
  EXPECT_EQ(InterventionalPnsOracle(m, 0, 1, 500.0, 2).value, 0.0);
}

TEST(EstimatePns, EmptyCellIsReported) {
  const CausalModel m({1.0, 1e-9}, Eigen::MatrixXd::Zero(2, 2), 1.0);
  const Realization r = GenerateSequence(m, 100.0, 1);
  try {
    EstimatePns(m, r, 0, 1);
    FAIL() << "expected EstimationError";
  } catch (const EstimationError& e) {
    EXPECT_NE(std::string(e.what()).find("= 1"), std::string::npos);
  }
  TriggerStream wrong{1, {}};
  EXPECT_THROW(EstimatePns(r.accepted, wrong, 0, 1, 1.0), ParameterError);
}

TEST(SampleExogenousPairModel, Shape) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CausalModel m = SampleExogenousPairModel(4, s);
    EXPECT_EQ(m.num_types(), 5);
    EXPECT_GT(m.theta(0, 1), 0.0);
    EXPECT_LE(m.theta(0, 1), 1.0);
    EXPECT_EQ(m.theta(0, 0), 0.0);
    for (int k = 1; k < 5; ++k) {
      EXPECT_TRUE(m.parents(k).empty());
      EXPECT_NE(m.theta(0, k), 0.0);
      EXPECT_GE(m.lambda(k), 0.5);
      EXPECT_LT(m.lambda(k), 2.0);
    }
  }
  EXPECT_THROW(SampleExogenousPairModel(0, 1), ParameterError);
}

}  // namespace
}  // namespace ctig
