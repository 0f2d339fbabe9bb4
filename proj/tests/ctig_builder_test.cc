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

#include "ctigbench/ctig_builder.h"

#include <cmath>
#include <numbers>
#include <set>

#include "ctigbench/errors.h"
#include "ctigbench/random.h"
#include "gtest/gtest.h"

namespace ctig {
namespace {

TEST(EdgeSpace, FormulaValues) {
  const EdgeSpace space(5);
  EXPECT_EQ(space.size(), 10);
  EXPECT_EQ(space.Index(0, 1), 0);
  EXPECT_EQ(space.Index(3, 4), 9);
  EXPECT_EQ(space.Index(4, 3), 9);
  EXPECT_EQ(EdgeIndex(1, 0, 5), 0);
}

TEST(EdgeSpace, RoundTripExhaustive) {
  for (int n = 2; n <= 100; ++n) {
    const EdgeSpace space(n);
    ASSERT_EQ(space.size(), n * (n - 1) / 2);
    for (int k = 0; k < space.size(); ++k) {
      const auto [a, b] = space.Pair(k);
      ASSERT_LT(a, b);
      ASSERT_EQ(space.Index(a, b), k);
    }
  }
}

TEST(EdgeSpace, Errors) {
  EXPECT_THROW(EdgeSpace(1), ParameterError);
  const EdgeSpace space(4);
  EXPECT_THROW(space.Index(2, 2), ParameterError);
  EXPECT_THROW(space.Index(0, 4), ParameterError);
  EXPECT_THROW(space.Pair(6), ParameterError);
}

TEST(SampleNodeFeatures, MeanNearZero) {
  const Eigen::MatrixXd x = SampleNodeFeatures(1000, 8, 5);
  const double sigma = 1.0 / std::sqrt(1000.0);
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(x.col(k).mean(), 0.0, 3.0 * sigma);
}

TEST(SampleNodeFeatures, DeterministicAndScalar) {
  EXPECT_EQ(SampleNodeFeatures(10, 3, 1), SampleNodeFeatures(10, 3, 1));
  const Eigen::MatrixXd x = SampleNodeFeatures(7, 1, 2);
  EXPECT_EQ(x.rows(), 7);
  EXPECT_EQ(x.cols(), 1);
  EXPECT_THROW(SampleNodeFeatures(0, 1, 2), ParameterError);
}

TEST(EdgeFeatures, Hadamard) {
  Eigen::VectorXd a(2), b(2), expected(2);
  a << 1, 2;
  b << 3, -1;
  expected << 3, -2;
  EXPECT_EQ(EdgeFeatures(a, b), expected);
  EXPECT_EQ(EdgeFeatures(a, Eigen::VectorXd::Ones(2)), a);
  EXPECT_THROW(EdgeFeatures(a, Eigen::VectorXd::Ones(3)), ParameterError);
}

TEST(EdgeFeatures, Symmetric) {
  const Eigen::MatrixXd x = SampleNodeFeatures(200, 4, 9);
  for (int k = 0; k + 1 < 200; k += 2) {
    const Eigen::VectorXd a = x.row(k).transpose(), b = x.row(k + 1).transpose();
    EXPECT_EQ(EdgeFeatures(a, b), EdgeFeatures(b, a));
  }
}

TEST(MakeSkewB, ExactlySkew) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto b = MakeSkewB(6, seed);
    const Eigen::MatrixXd sum = b.matrix() + b.matrix().transpose();
    EXPECT_TRUE(sum.isZero(0.0));
    EXPECT_TRUE(b.matrix().diagonal().isZero(0.0));
  }
  EXPECT_EQ(MakeSkewB(1, 3).matrix(), Eigen::MatrixXd::Zero(1, 1));
}

TEST(SkewSymmetricMatrix, RejectsNonSkew) {
  EXPECT_THROW(SkewSymmetricMatrix(Eigen::MatrixXd::Identity(2, 2)), ParameterError);
  EXPECT_THROW(SkewSymmetricMatrix(Eigen::MatrixXd::Zero(2, 3)), ParameterError);
}

TEST(Influence, SelfInfluenceVanishes) {
  const auto b = MakeSkewB(5, 1);
  const Eigen::MatrixXd z = SampleNodeFeatures(50, 5, 2);
  for (int k = 0; k < 50; ++k) {
    EXPECT_EQ(Influence(z.row(k).transpose(), z.row(k).transpose(), b, 100.0), 0.0);
  }
}

TEST(Influence, Antisymmetric) {
  const auto b = MakeSkewB(5, 1);
  const Eigen::MatrixXd z = SampleNodeFeatures(200, 5, 3);
  for (int k = 0; k + 1 < 200; k += 2) {
    const Eigen::VectorXd u = z.row(k).transpose(), v = z.row(k + 1).transpose();
    EXPECT_EQ(Influence(u, v, b, 7.5), -Influence(v, u, b, 7.5));
  }
}

// Scalar oracle: z^T B z' = B(0, 1) = 1, so h = sin((pi / 2) * tanh(1)),
// evaluated independently as 0.9306953884513853.
TEST(Influence, ScalarOracle) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, -1, 0;
  const SkewSymmetricMatrix b(m);
  Eigen::VectorXd z(2), zp(2);
  z << 1, 0;
  zp << 0, 1;
  EXPECT_NEAR(Influence(z, zp, b, std::numbers::pi / 2), 0.9306953884513853,
              1e-15);
}

TEST(Threshold, Values) {
  EXPECT_EQ(Threshold(0.6, 0.55), 0.6);
  EXPECT_EQ(Threshold(0.5, 0.55), 0.0);
  EXPECT_EQ(Threshold(-0.55, 0.55), -0.55);
  EXPECT_THROW(Threshold(0.5, 0.0), ParameterError);
  EXPECT_THROW(Threshold(0.5, 1.0), ParameterError);
}

TEST(NoncausalMask, NoMaskedEdges) {
  const auto m = MakeNoncausalMask(10, 0, 1);
  EXPECT_EQ(m.mask, Eigen::MatrixXi::Ones(10, 10));
  EXPECT_TRUE(m.edges.empty());
}

TEST(NoncausalMask, AllButOne) {
  const auto m = MakeNoncausalMask(10, 9, 1);
  EXPECT_EQ(m.mask.sum(), 1);
  int rows_alive = 0;
  for (int i = 0; i < 10; ++i) rows_alive += m.mask.row(i).sum() > 0;
  EXPECT_EQ(rows_alive, 1);
}

TEST(NoncausalMask, TwoOfTen) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = MakeNoncausalMask(10, 2, seed);
    ASSERT_EQ(m.edges.size(), 2u);
    EXPECT_NE(m.edges[0], m.edges[1]);
    EXPECT_EQ(m.mask, m.mask.transpose());
    for (int i = 0; i < 10; ++i) {
      const bool masked = i == m.edges[0] || i == m.edges[1];
      EXPECT_EQ(m.mask.row(i).sum() == 0, masked);
      EXPECT_EQ(m.mask.col(i).sum() == 0, masked);
    }
  }
  EXPECT_THROW(MakeNoncausalMask(10, 10, 0), ParameterError);
  EXPECT_THROW(MakeNoncausalMask(10, -1, 0), ParameterError);
}

TEST(NoncausalMask, UniformOverEdges) {
  const int trials = 5000, e = 10;
  std::vector<int> hits(e, 0);
  for (int s = 0; s < trials; ++s) {
    for (const int k : MakeNoncausalMask(e, 2, s).edges) ++hits[k];
  }
  // Each edge is masked with probability 2/10.
  const double p = 0.2, sigma = std::sqrt(trials * p * (1 - p));
  for (const int h : hits) EXPECT_NEAR(h, trials * p, 4.0 * sigma);
}

void ExpectInvariants(const CtigModel& c, int l) {
  const auto& m = c.matrices;
  const int e = c.edges.size();
  EXPECT_EQ(m.h.rows(), e);
  EXPECT_TRUE((m.h + m.h.transpose()).isZero(0.0));
  EXPECT_TRUE((m.theta_tilde + m.theta_tilde.transpose()).isZero(0.0));
  EXPECT_TRUE(m.theta_tilde.diagonal().isZero(0.0));
  EXPECT_EQ(m.mask, m.mask.transpose());
  int zero_rows = 0;
  for (int i = 0; i < e; ++i) zero_rows += m.mask.row(i).sum() == 0;
  EXPECT_EQ(zero_rows, l);
  EXPECT_EQ(m.adjacency, (m.theta.array() != 0.0).cast<int>().matrix());
  EXPECT_LE(m.theta.cwiseAbs().maxCoeff(), 1.0);
  for (const int k : c.noncausal_edges) {
    EXPECT_TRUE(m.theta.row(k).isZero(0.0));
    EXPECT_TRUE(m.theta.col(k).isZero(0.0));
    EXPECT_TRUE(c.model.parents(k).empty());
    for (int i = 0; i < e; ++i) {
      for (const int j : c.model.parents(i)) EXPECT_NE(j, k);
    }
  }
}

TEST(BuildCtigModel, ReferencePresetInvariants) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto c = BuildCtigModel(CtigParams::Reference(seed));
    EXPECT_EQ(c.model.num_types(), 10);
    ExpectInvariants(c, 2);
  }
}

TEST(BuildCtigModel, ThresholdNearOneEmptiesGraph) {
  auto params = CtigParams::Reference(3);
  params.nu0 = 1.0;  // |h| <= sin(1) < 0.85 everywhere
  params.nu1 = 0.999;
  const auto c = BuildCtigModel(params);
  EXPECT_TRUE(c.matrices.theta_tilde.isZero(0.0));
  EXPECT_EQ(c.matrices.adjacency.sum(), 0);
}

TEST(BuildCtigModel, SymmetricSupportWithoutMask) {
  auto params = CtigParams::Reference(11);
  params.num_nodes = 4;
  params.noncausal = 0;
  params.nu1 = 0.05;
  const auto c = BuildCtigModel(params);
  const auto& a = c.matrices.adjacency;
  EXPECT_TRUE(a.diagonal().isZero());
  EXPECT_EQ(a, a.transpose());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      EXPECT_EQ(std::abs(c.matrices.theta_tilde(i, j)),
                std::abs(c.matrices.theta_tilde(j, i)));
    }
  }
}

TEST(BuildCtigModel, SparsityMonotoneInThreshold) {
  const auto c = BuildCtigModel(CtigParams::Reference(4));
  long previous = -1;
  for (const double nu1 : {0.9, 0.7, 0.55, 0.3, 0.1}) {
    const long nnz = (ThresholdMatrix(c.matrices.h, nu1).array() != 0.0).count();
    EXPECT_GE(nnz, previous);
    previous = nnz;
  }
}

TEST(BuildCtigModel, EdgeFeaturesFollowEdgeSpace) {
  const auto c = BuildCtigModel(CtigParams::Reference(5));
  for (int k = 0; k < c.edges.size(); ++k) {
    const auto [a, b] = c.edges.Pair(k);
    EXPECT_EQ(Eigen::VectorXd(c.edge_features.row(k).transpose()),
              EdgeFeatures(c.node_features.row(a).transpose(),
                           c.node_features.row(b).transpose()));
  }
}

TEST(BuildCtigModel, PropagatesParameterErrors) {
  auto params = CtigParams::Reference(1);
  params.nu1 = 1.5;
  EXPECT_THROW(BuildCtigModel(params), ParameterError);
  params = CtigParams::Reference(1);
  params.noncausal = 10;
  EXPECT_THROW(BuildCtigModel(params), ParameterError);
}

TEST(BuildCtigModel, UsableByGenerator) {
  const auto c = BuildCtigModel(CtigParams::Reference(6));
  const auto r = GenerateSequence(c.model, 200.0, 1);
  EXPECT_EQ(r.triggers.size(), 10u);
  EXPECT_EQ(ReplayAcceptance(c.model, r.triggers, r.accepted).events,
            r.accepted.events);
}

}  // namespace
}  // namespace ctig
