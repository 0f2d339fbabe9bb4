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


// Small summary statistics shared by the experiment drivers.

#ifndef CTIGBENCH_STATS_H_
#define CTIGBENCH_STATS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ctig {

// Compensated mean. Throws ParameterError on an empty input.
double Mean(std::span<const double> xs);

// Unbiased sample variance; 0 for fewer than two values.
double SampleVariance(std::span<const double> xs);

struct NormalInterval {
  double mean = 0.0;
  double half_width = 0.0;  // z * sd / sqrt(count)
  int count = 0;
  double lower() const { return mean - half_width; }
  double upper() const { return mean + half_width; }
};

// Normal-approximation confidence interval for the mean; z = 1.96 gives 95%.
NormalInterval MeanInterval(std::span<const double> xs, double z = 1.96);

// 1-based ranks, ties sharing the average of their positions.
std::vector<double> AverageRanks(std::span<const double> xs);

// Spearman rank correlation with average ranks for ties. NaN when either
// input is constant. Throws ParameterError on length mismatch or n < 2.
double SpearmanRho(std::span<const double> x, std::span<const double> y);

// P(K >= k) for K ~ Binomial(n, p), summed in log space.
double BinomialUpperTail(std::int64_t k, std::int64_t n, double p);

}  // namespace ctig

#endif  // CTIGBENCH_STATS_H_
