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


// Executable checks of structural properties of the event model:
// monotonicity of an effect in one of its history flags, the diagonal
// support condition for Markovianity, acyclicity and exogeneity of the
// unrolled graph, and the probability of necessity and sufficiency (PNS)
// estimated from data and measured by intervention.

#ifndef CTIGBENCH_PROPERTIES_H_
#define CTIGBENCH_PROPERTIES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctigbench/causal_model.h"

namespace ctig {

struct PropertyVerdict {
  std::string property;
  int effect = -1;
  int cause = -1;
  bool verdict = false;
  // For monotonicity: the first parent subset C violating the condition.
  std::optional<std::vector<int>> witness;
  std::string evidence;
};

// Theta(i, j) in [0, 1]. Throws ParameterError unless j is a parent of i.
bool IsMonotonicClosedForm(const CausalModel& model, int effect, int cause);

// Enumerates every C subset of P_i \ {j} and checks that no C has
// sum_C theta >= 0 while theta(i, j) + sum_C theta < 0. Subsets are visited
// in increasing bitmask order over the ascending parent list, so C = {} is
// first. Throws ParameterError unless j is a parent of i, and CapacityError
// when |P_i| exceeds `max_parents`.
PropertyVerdict IsMonotonicBruteForce(const CausalModel& model, int effect, int cause,
                                      int max_parents = 20);

// True iff every nonzero weight sits on the diagonal. This is the sufficient
// A = I condition, not a general Markovianity test.
bool IsMarkovian(const CausalModel& model);

// Builds the unrolled graph with nodes U_i, X'_j and X_i and edges
// U_i -> X_i and X'_j -> X_i for j in P_i, then checks (a) every edge ends
// in an X node and the graph is acyclic and (b) every X' node has in-degree
// zero.
std::vector<PropertyVerdict> StructuralChecks(const CausalModel& model);

struct PnsEstimate {
  double value = 0.0;
  long long count_flag_1 = 0;  // triggers of i with X'_j = 1
  long long count_flag_0 = 0;
  long long accepted_flag_1 = 0;
  long long accepted_flag_0 = 0;
  std::optional<bool> monotone;  // set when a model is supplied
};

// Over the trigger times t of type i: P(X_i = 1 | X'_j = 1) - P(X_i = 1 |
// X'_j = 0), with X_i(t) = 1{(i, t) in S} and X'_j(t) read from `sequence`
// with window tau_bar. Throws EstimationError naming an empty cell.
PnsEstimate EstimatePns(const EventSequence& sequence, const TriggerStream& triggers,
                        int effect, int cause, double tau_bar);

// Same, with triggers and window from a realization of `model`; fills the
// monotonicity flag when cause is a parent of effect.
PnsEstimate EstimatePns(const CausalModel& model, const Realization& realization,
                        int effect, int cause);

struct InterventionalPns {
  double value = 0.0;
  double p_do_1 = 0.0;  // acceptance frequency of i with X'_j forced to 1
  double p_do_0 = 0.0;
  long long triggers = 0;
};

// Two paired runs sharing every trigger stream; in each, the flag X'_j is
// forced at every evaluation of type i while the history evolves otherwise
// as usual. Throws EstimationError if type i never triggers.
InterventionalPns InterventionalPnsOracle(const CausalModel& model, int effect, int cause,
                                          double horizon, std::uint64_t seed);

// Model with one effect (type 0) whose parents 1..num_parents are root
// types without parents of their own, so their flags are mutually
// independent. theta(0, 1) is drawn from (0, 1], making type 0 monotone in
// type 1; the other weights are U[-1, 1] without zeros. Rates U[lo, hi).
CausalModel SampleExogenousPairModel(int num_parents, std::uint64_t seed,
                                     const LambdaRange& lambdas = {},
                                     double tau_bar = 1.0);

}  // namespace ctig

#endif  // CTIGBENCH_PROPERTIES_H_
