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


// Locally weighted linear regression for trend lines over scatter data.

#ifndef CTIGBENCH_LOWESS_H_
#define CTIGBENCH_LOWESS_H_

#include <span>
#include <vector>

namespace ctig {

inline constexpr double kDefaultLowessFraction = 0.95;

// Fit at `x0`: weighted least squares line over the ceil(fraction * N)
// points nearest to x0, tricube weights scaled by the distance of the
// farthest of them. One pass, no robustness iterations. When the local
// design cannot determine a slope the weighted mean is returned.
// Throws ParameterError for fewer than 3 points, mismatched sizes,
// non-finite input, or fraction outside (0, 1].
double LowessAt(std::span<const double> x, std::span<const double> y,
                double fraction, double x0);

// Fitted values at every input abscissa, in input order.
std::vector<double> Lowess(std::span<const double> x, std::span<const double> y,
                           double fraction = kDefaultLowessFraction);

}  // namespace ctig

#endif  // CTIGBENCH_LOWESS_H_
