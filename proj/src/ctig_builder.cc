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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ctigbench/errors.h"
#include "ctigbench/random.h"

namespace ctig {

EdgeSpace::EdgeSpace(int num_nodes) : num_nodes_(num_nodes) {
  if (num_nodes < 2) throw ParameterError("EdgeSpace: need at least 2 nodes");
  size_ = num_nodes * (num_nodes - 1) / 2;
}

int EdgeSpace::Index(int a, int b) const {
  if (a < 0 || b < 0 || a >= num_nodes_ || b >= num_nodes_) {
    throw ParameterError("EdgeSpace::Index: node out of range");
  }
  if (a == b) throw ParameterError("EdgeSpace::Index: self-pair has no edge");
  if (a > b) std::swap(a, b);
  return a * (2 * num_nodes_ - a - 1) / 2 + (b - a - 1);
}

std::pair<int, int> EdgeSpace::Pair(int index) const {
  if (index < 0 || index >= size_) {
    throw ParameterError("EdgeSpace::Pair: index out of range");
  }
  // Row a starts at a * (2n - a - 1) / 2; rows hold n-1, n-2, ... entries.
  int a = 0;
  int row_start = 0;
  while (row_start + (num_nodes_ - a - 1) <= index) {
    row_start += num_nodes_ - a - 1;
    ++a;
  }
  return {a, a + 1 + (index - row_start)};
}

int EdgeIndex(int a, int b, int num_nodes) {
  return EdgeSpace(num_nodes).Index(a, b);
}

SkewSymmetricMatrix::SkewSymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw ParameterError("SkewSymmetricMatrix: need a non-empty square matrix");
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = i; j < m_.cols(); ++j) {
      if (m_(i, j) != -m_(j, i)) {
        throw ParameterError("SkewSymmetricMatrix: B(" + std::to_string(i) +
                             "," + std::to_string(j) + ") != -B(j,i)");
      }
    }
  }
}

double SkewSymmetricMatrix::Form(const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& z_prime) const {
  const Eigen::Index r = m_.rows();
  if (z.size() != r || z_prime.size() != r) {
    throw ParameterError("SkewSymmetricMatrix::Form: dimension mismatch");
  }
  double sum = 0.0;
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = a + 1; b < r; ++b) {
      sum += m_(a, b) * (z[a] * z_prime[b] - z[b] * z_prime[a]);
    }
  }
  return sum;
}

Eigen::MatrixXd SampleNodeFeatures(int num_nodes, int dim, std::uint64_t seed) {
  if (num_nodes < 1 || dim < 1) {
    throw ParameterError("SampleNodeFeatures: n and r must be >= 1");
  }
  Rng rng(seed);
  Eigen::MatrixXd x(num_nodes, dim);
  for (int a = 0; a < num_nodes; ++a) {
    for (int k = 0; k < dim; ++k) x(a, k) = rng.Normal();
  }
  return x;
}

Eigen::VectorXd EdgeFeatures(const Eigen::VectorXd& x_a,
                             const Eigen::VectorXd& x_b) {
  if (x_a.size() != x_b.size()) {
    throw ParameterError("EdgeFeatures: feature dimensions differ");
  }
  return x_a.cwiseProduct(x_b);
}

SkewSymmetricMatrix MakeSkewB(int dim, std::uint64_t seed) {
  if (dim < 1) throw ParameterError("MakeSkewB: r must be >= 1");
  Rng rng(seed);
  Eigen::MatrixXd b_hat(dim, dim);
  for (int col = 0; col < dim; ++col) {
    for (int row = 0; row < dim; ++row) b_hat(row, col) = rng.Normal();
  }
  Eigen::MatrixXd b = b_hat - b_hat.transpose();
  return SkewSymmetricMatrix(std::move(b));
}

double Influence(const Eigen::VectorXd& z, const Eigen::VectorXd& z_prime,
                 const SkewSymmetricMatrix& b, double nu0) {
  return std::sin(nu0 * std::tanh(b.Form(z, z_prime)));
}

double Threshold(double x, double nu1) {
  if (!(nu1 > 0.0 && nu1 < 1.0)) {
    throw ParameterError("Threshold: nu1 must lie in (0, 1)");
  }
  return std::abs(x) >= nu1 ? x : 0.0;
}

NoncausalMask MakeNoncausalMask(int num_edges, int l, std::uint64_t seed) {
  if (num_edges < 1) throw ParameterError("MakeNoncausalMask: E must be >= 1");
  if (l < 0 || l >= num_edges) {
    throw ParameterError("MakeNoncausalMask: need 0 <= l < E");
  }
  // Partial Fisher-Yates: the first l slots are a uniform l-subset.
  std::vector<int> pool(num_edges);
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  for (int k = 0; k < l; ++k) {
    const int pick = k + static_cast<int>(rng.UniformIndex(num_edges - k));
    std::swap(pool[k], pool[pick]);
  }
  NoncausalMask out;
  out.edges.assign(pool.begin(), pool.begin() + l);
  std::sort(out.edges.begin(), out.edges.end());
  out.mask = Eigen::MatrixXi::Ones(num_edges, num_edges);
  for (const int e : out.edges) {
    out.mask.row(e).setZero();
    out.mask.col(e).setZero();
  }
  return out;
}

CtigSeeds CtigSeeds::FromMaster(std::uint64_t master) {
  return {DeriveSeed(master, "ctig.features"), DeriveSeed(master, "ctig.skew"),
          DeriveSeed(master, "ctig.mask"), DeriveSeed(master, "ctig.lambdas")};
}

CtigParams CtigParams::Reference(std::uint64_t master_seed) {
  CtigParams params;
  params.seeds = CtigSeeds::FromMaster(master_seed);
  return params;
}

void CtigParams::Validate() const {
  if (num_nodes < 2) throw ParameterError("ctig: num_nodes must be >= 2");
  if (feature_dim < 1) throw ParameterError("ctig: feature_dim must be >= 1");
  if (!std::isfinite(nu0)) throw ParameterError("ctig: nu0 must be finite");
  if (!(nu1 > 0.0 && nu1 < 1.0)) throw ParameterError("ctig: nu1 must lie in (0, 1)");
  const int e = num_nodes * (num_nodes - 1) / 2;
  if (noncausal < 0 || noncausal >= e) {
    throw ParameterError("ctig: noncausal must satisfy 0 <= l < E = " +
                         std::to_string(e));
  }
  if (!(lambda_range.lo > 0.0) || !(lambda_range.lo <= lambda_range.hi)) {
    throw ParameterError("ctig: need 0 < lambda_min <= lambda_max");
  }
  if (!(tau_bar > 0.0)) throw ParameterError("ctig: tau_bar must be positive");
}

Eigen::MatrixXd InfluenceMatrix(const Eigen::MatrixXd& edge_features,
                                const SkewSymmetricMatrix& b, double nu0) {
  const Eigen::Index e = edge_features.rows();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(e, e);
  for (Eigen::Index i = 0; i < e; ++i) {
    const Eigen::VectorXd zi = edge_features.row(i).transpose();
    for (Eigen::Index j = 0; j < e; ++j) {
      if (i == j) continue;
      h(i, j) = Influence(zi, edge_features.row(j).transpose(), b, nu0);
    }
  }
  return h;
}

Eigen::MatrixXd ThresholdMatrix(const Eigen::MatrixXd& h, double nu1) {
  return h.unaryExpr([nu1](double x) { return Threshold(x, nu1); });
}

CtigModel BuildCtigModel(const CtigParams& params) {
  params.Validate();
  const EdgeSpace edges(params.num_nodes);
  const int e = edges.size();

  Eigen::MatrixXd x =
      SampleNodeFeatures(params.num_nodes, params.feature_dim, params.seeds.features);
  Eigen::MatrixXd z(e, params.feature_dim);
  for (int k = 0; k < e; ++k) {
    const auto [a, b] = edges.Pair(k);
    z.row(k) = EdgeFeatures(x.row(a).transpose(), x.row(b).transpose());
  }
  SkewSymmetricMatrix skew = MakeSkewB(params.feature_dim, params.seeds.skew);

  InfluenceMatrices m;
  m.h = InfluenceMatrix(z, skew, params.nu0);
  m.theta_tilde = ThresholdMatrix(m.h, params.nu1);
  NoncausalMask mask = MakeNoncausalMask(e, params.noncausal, params.seeds.mask);
  m.mask = mask.mask;
  m.theta = m.theta_tilde.cwiseProduct(m.mask.cast<double>());
  m.adjacency = (m.theta.array() != 0.0).cast<int>().matrix();

  Rng lambda_rng(params.seeds.lambdas);
  std::vector<double> lambdas(e);
  for (double& l : lambdas) {
    l = lambda_rng.Uniform(params.lambda_range.lo, params.lambda_range.hi);
  }
  CausalModel model(std::move(lambdas), m.theta, params.tau_bar);
  return CtigModel{std::move(model), std::move(m), std::move(x), std::move(z),
                   std::move(skew), edges, std::move(mask.edges)};
}

}  // namespace ctig
