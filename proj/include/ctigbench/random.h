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

#ifndef CTIGBENCH_RANDOM_H_
#define CTIGBENCH_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace ctig {

// Derives an independent child seed from a master seed, a purpose tag and an
// optional index. All randomness in the library flows through this so that
// each sub-result (features, B, mask, triggers, negatives, shuffles, ...) can
// be reproduced on its own.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view purpose,
                         std::uint64_t index = 0);

// Random engine with platform-independent variate generation. The standard
// <random> distributions are implementation-defined, so the variates below
// are computed directly from the 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t UniformIndex(std::uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Exponential with the given rate; may return 0 on a zero uniform draw.
  double Exponential(double rate);
  // Standard normal (Marsaglia polar method).
  double Normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ctig

#endif  // CTIGBENCH_RANDOM_H_
