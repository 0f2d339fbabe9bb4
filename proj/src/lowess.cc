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


#include "ctigbench/lowess.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ctigbench/errors.h"

namespace ctig {

namespace {

void CheckInput(std::span<const double> x, std::span<const double> y, double fraction) {
  if (x.size() != y.size()) throw ParameterError("lowess: x and y differ in length");
  if (x.size() < 3) throw ParameterError("lowess: need at least 3 points");
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ParameterError("lowess: fraction must lie in (0, 1]");
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(y[k])) {
      throw ParameterError("lowess: points must be finite");
    }
  }
}

double Fit(std::span<const double> x, std::span<const double> y, double fraction,
           double x0) {
  const std::size_t n = x.size();
  const std::size_t q = std::min<std::size_t>(
      n, std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(fraction * n - 1e-9))));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(x[a] - x0) < std::abs(x[b] - x0);
  });
  const double h = std::abs(x[order[q - 1]] - x0);

  double sw = 0, swx = 0, swy = 0;
  std::vector<double> w(q);
  for (std::size_t k = 0; k < q; ++k) {
    const std::size_t i = order[k];
    double wk = 1.0;
    if (h > 0.0) {
      const double u = std::abs(x[i] - x0) / h;
      const double c = u < 1.0 ? 1.0 - u * u * u : 0.0;
      wk = c * c * c;
    }
    w[k] = wk;
    sw += wk;
    swx += wk * x[i];
    swy += wk * y[i];
  }
  if (!(sw > 0.0)) {
    // Only the farthest neighbours carry weight zero, so this means every
    // selected point sits at distance h; average them.
    double s = 0;
    for (std::size_t k = 0; k < q; ++k) s += y[order[k]];
    return s / static_cast<double>(q);
  }
  const double mx = swx / sw, my = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < q; ++k) {
    const std::size_t i = order[k];
    sxx += w[k] * (x[i] - mx) * (x[i] - mx);
    sxy += w[k] * (x[i] - mx) * (y[i] - my);
  }
  const double spread = std::abs(mx) + std::sqrt(sxx / sw);
  if (!(sxx > 1e-12 * sw * spread * spread) || sxx == 0.0) return my;
  return my + (sxy / sxx) * (x0 - mx);
}

}  // namespace

double LowessAt(std::span<const double> x, std::span<const double> y, double fraction,
                double x0) {
  CheckInput(x, y, fraction);
  if (!std::isfinite(x0)) throw ParameterError("lowess: evaluation point must be finite");
  return Fit(x, y, fraction, x0);
}

std::vector<double> Lowess(std::span<const double> x, std::span<const double> y,
                           double fraction) {
  CheckInput(x, y, fraction);
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = Fit(x, y, fraction, x[k]);
  return out;
}

}  // namespace ctig
