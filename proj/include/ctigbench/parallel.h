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

#ifndef CTIGBENCH_PARALLEL_H_
#define CTIGBENCH_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ctig {

// Thread count used when a caller passes 0: $CTIG_THREADS if set and
// positive, otherwise 1.
int DefaultThreadCount();

// Runs body(k) for k in [0, count) on up to `threads` workers. Work items are
// independent; callers write results into per-index slots so that the
// reduction order never depends on scheduling. The first exception thrown by
// any item is rethrown after all workers have joined.
void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& body);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x);
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ctig

#endif  // CTIGBENCH_PARALLEL_H_
