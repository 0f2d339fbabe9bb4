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


#include "ctigbench/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "ctigbench/errors.h"
#include "ctigbench/parallel.h"

namespace ctig {

namespace {

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = Mean(x), my = Mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && xs[order[hi]] == xs[order[lo]]) ++hi;
    const double rank = 0.5 * static_cast<double>(lo + hi - 1) + 1.0;
    for (std::size_t k = lo; k < hi; ++k) ranks[order[k]] = rank;
    lo = hi;
  }
  return ranks;
}

double Mean(std::span<const double> xs) {
  if (xs.empty()) throw ParameterError("Mean: empty input");
  CompensatedSum s;
  for (const double x : xs) s.Add(x);
  return s.Total() / static_cast<double>(xs.size());
}

double SampleVariance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = Mean(xs);
  CompensatedSum ss;
  for (const double x : xs) ss.Add((x - m) * (x - m));
  return ss.Total() / static_cast<double>(xs.size() - 1);
}

NormalInterval MeanInterval(std::span<const double> xs, double z) {
  NormalInterval out;
  out.mean = Mean(xs);
  out.count = static_cast<int>(xs.size());
  out.half_width = z * std::sqrt(SampleVariance(xs) / static_cast<double>(xs.size()));
  return out;
}

double SpearmanRho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("SpearmanRho: length mismatch");
  if (x.size() < 2) throw ParameterError("SpearmanRho: need at least two points");
  const std::vector<double> rx = AverageRanks(x), ry = AverageRanks(y);
  return Pearson(rx, ry);
}

double BinomialUpperTail(std::int64_t k, std::int64_t n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0) throw ParameterError("BinomialUpperTail: bad arguments");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - k + 1));
  for (std::int64_t i = k; i <= n; ++i) {
    const double t = lgn - std::lgamma(static_cast<double>(i) + 1.0) -
                     std::lgamma(static_cast<double>(n - i) + 1.0) +
                     static_cast<double>(i) * lp + static_cast<double>(n - i) * lq;
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  double s = 0.0;
  for (const double t : terms) s += std::exp(t - max_term);
  return std::min(1.0, std::exp(max_term) * s);
}

}  // namespace ctig
