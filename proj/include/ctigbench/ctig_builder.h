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

// Causal temporal interaction graphs: a causal model whose event types are
// the E = n(n-1)/2 undirected edges of an n-node graph. Edge-to-edge
// influence comes from node features through
//
//   z_(a,b) = x_a * x_b                       (elementwise)
//   h(z, z') = sin(nu0 * tanh(z^T B z'))      (B skew-symmetric)
//   theta~(i, j) = h(z_i, z_j) * 1{|h| >= nu1}
//   theta = theta~ * M_l                      (l non-causal edges masked)

#ifndef CTIGBENCH_CTIG_BUILDER_H_
#define CTIGBENCH_CTIG_BUILDER_H_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctigbench/causal_model.h"

namespace ctig {

// Canonical lexicographic numbering of unordered node pairs {a, b}, a != b.
class EdgeSpace {
 public:
  // Throws ParameterError for n < 2.
  explicit EdgeSpace(int num_nodes);

  int num_nodes() const { return num_nodes_; }
  int size() const { return size_; }

  // a * (2n - a - 1) / 2 + (b - a - 1) for a < b; symmetric in (a, b).
  // Throws ParameterError for a == b or nodes out of range.
  int Index(int a, int b) const;
  // Inverse of Index; first < second.
  std::pair<int, int> Pair(int index) const;

 private:
  int num_nodes_;
  int size_;
};

// Free-function form of EdgeSpace::Index.
int EdgeIndex(int a, int b, int num_nodes);

// B with B^T == -B exactly. Construction is the only way to obtain one, so
// every bilinear form taken through it is exactly antisymmetric.
class SkewSymmetricMatrix {
 public:
  // Throws ParameterError unless `m` is square with m(i, j) == -m(j, i).
  explicit SkewSymmetricMatrix(Eigen::MatrixXd m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

  // z^T B z', accumulated over the strict upper triangle as
  //   sum_{a<b} B(a, b) * (z_a z'_b - z_b z'_a),
  // so that Form(z, z) == 0 and Form(z, z') == -Form(z', z) bit for bit.
  double Form(const Eigen::VectorXd& z, const Eigen::VectorXd& z_prime) const;

 private:
  Eigen::MatrixXd m_;
};

// n x r matrix of i.i.d. N(0, 1) node features, one row per node.
Eigen::MatrixXd SampleNodeFeatures(int num_nodes, int dim, std::uint64_t seed);

// Hadamard product. Throws ParameterError on dimension mismatch.
Eigen::VectorXd EdgeFeatures(const Eigen::VectorXd& x_a,
                             const Eigen::VectorXd& x_b);

// B = B^ - B^T with B^ assembled column-wise from i.i.d. N(0, I_r) vectors.
SkewSymmetricMatrix MakeSkewB(int dim, std::uint64_t seed);

// sin(nu0 * tanh(z^T B z')), in [-1, 1].
double Influence(const Eigen::VectorXd& z, const Eigen::VectorXd& z_prime,
                 const SkewSymmetricMatrix& b, double nu0);

// x * 1{|x| >= nu1}. Throws ParameterError unless 0 < nu1 < 1.
double Threshold(double x, double nu1);

struct NoncausalMask {
  Eigen::MatrixXi mask;        // E x E, symmetric
  std::vector<int> edges;      // masked edge indices, ascending
};

// Samples l distinct edges uniformly without replacement and zeroes their
// rows and columns. Throws ParameterError unless 0 <= l < num_edges.
NoncausalMask MakeNoncausalMask(int num_edges, int l, std::uint64_t seed);

struct CtigSeeds {
  std::uint64_t features = 0;
  std::uint64_t skew = 0;
  std::uint64_t mask = 0;
  std::uint64_t lambdas = 0;

  // Splits one master seed per purpose.
  static CtigSeeds FromMaster(std::uint64_t master);
};

struct CtigParams {
  int num_nodes = 5;
  int feature_dim = 5;
  double nu0 = 100.0;
  double nu1 = 0.55;
  int noncausal = 2;
  LambdaRange lambda_range;
  double tau_bar = 1.0;
  CtigSeeds seeds;

  // The five-node reference configuration: n = 5, r = 5, nu0 = 100,
  // nu1 = 0.55, l = 2.
  static CtigParams Reference(std::uint64_t master_seed);

  // Throws ParameterError naming the first violated constraint.
  void Validate() const;
};

struct InfluenceMatrices {
  Eigen::MatrixXd h;            // raw influence h(z_i, z_j)
  Eigen::MatrixXd theta_tilde;  // thresholded
  Eigen::MatrixXi mask;         // M_l
  Eigen::MatrixXd theta;        // theta_tilde masked
  Eigen::MatrixXi adjacency;    // 1{theta != 0}
};

struct CtigModel {
  CausalModel model;  // over E edge-event types
  InfluenceMatrices matrices;
  Eigen::MatrixXd node_features;
  Eigen::MatrixXd edge_features;  // E x r
  SkewSymmetricMatrix skew;
  EdgeSpace edges;
  std::vector<int> noncausal_edges;
};

CtigModel BuildCtigModel(const CtigParams& params);

// Influence and threshold stages for given edge features; exposed so the
// threshold can be swept with features and B held fixed.
Eigen::MatrixXd InfluenceMatrix(const Eigen::MatrixXd& edge_features,
                                const SkewSymmetricMatrix& b, double nu0);
Eigen::MatrixXd ThresholdMatrix(const Eigen::MatrixXd& h, double nu1);

}  // namespace ctig

#endif  // CTIGBENCH_CTIG_BUILDER_H_
