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

#include "ctigbench/point_process.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctigbench/errors.h"

namespace ctig {

TriggerStream SamplePoissonProcess(double rate, double horizon,
                                   std::uint64_t seed, int event_type) {
  Rng rng(seed);
  return SamplePoissonProcess(rate, horizon, rng, event_type);
}

TriggerStream SamplePoissonProcess(double rate, double horizon, Rng& rng,
                                   int event_type) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ParameterError("SamplePoissonProcess: rate must be positive, got " +
                         std::to_string(rate));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ParameterError(
        "SamplePoissonProcess: horizon must be positive, got " +
        std::to_string(horizon));
  }
  TriggerStream stream;
  stream.event_type = event_type;
  stream.times.reserve(static_cast<std::size_t>(rate * horizon * 1.1) + 4);
  double t = 0.0;
  bool first = true;
  while (true) {
    double next = t + rng.Exponential(rate);
    // A zero gap (or one lost to rounding) would duplicate a time.
    while (!first && next <= t) next = t + rng.Exponential(rate);
    if (next >= horizon) break;
    stream.times.push_back(next);
    t = next;
    first = false;
  }
  return stream;
}

Timeline MergeTimeline(std::span<const TriggerStream> streams) {
  std::size_t total = 0;
  for (const auto& s : streams) total += s.times.size();
  Timeline timeline;
  timeline.reserve(total);
  for (const auto& s : streams) {
    for (const double t : s.times) timeline.push_back({s.event_type, t});
  }
  std::sort(timeline.begin(), timeline.end(), EventBefore);
  return timeline;
}

}  // namespace ctig
