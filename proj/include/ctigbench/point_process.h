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

// Homogeneous Poisson point processes on a finite horizon and the merged,
// time-ordered view of several per-type trigger streams.

#ifndef CTIGBENCH_POINT_PROCESS_H_
#define CTIGBENCH_POINT_PROCESS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ctigbench/random.h"

namespace ctig {

// A typed instant. Used both for merged trigger timelines and for observed
// event sequences.
struct Event {
  int type = 0;
  double time = 0.0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Strict ordering by time, ties broken by ascending type.
inline bool EventBefore(const Event& a, const Event& b) {
  return a.time < b.time || (a.time == b.time && a.type < b.type);
}

// Candidate firing times of one event type. `times` is strictly increasing
// and lies in [0, horizon) of the process that produced it.
struct TriggerStream {
  int event_type = 0;
  std::vector<double> times;
};

using Timeline = std::vector<Event>;

// Realization of a homogeneous PPP with intensity `rate` on [0, horizon),
// built from cumulative exponential inter-arrival gaps. Gaps that would not
// advance the clock are redrawn so the output is strictly increasing.
// Throws ParameterError unless rate > 0 and horizon > 0.
TriggerStream SamplePoissonProcess(double rate, double horizon,
                                   std::uint64_t seed, int event_type = 0);
TriggerStream SamplePoissonProcess(double rate, double horizon, Rng& rng,
                                   int event_type = 0);

// Globally time-sorted union of the streams; equal times are ordered by
// ascending event type. The result does not depend on the order of `streams`.
Timeline MergeTimeline(std::span<const TriggerStream> streams);

}  // namespace ctig

#endif  // CTIGBENCH_POINT_PROCESS_H_
