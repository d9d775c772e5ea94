// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KNNPOISON_GREEDY_H_
#define KNNPOISON_GREEDY_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"
#include "knnpoison/influence.h"
#include "knnpoison/search.h"

namespace knnpoison {

struct GreedyConfig {
  int budget = 1;
  // Split evenly across the `budget` single-point searches.
  std::chrono::milliseconds total_time{std::chrono::hours(24)};
  int k = 1;
  NormSpec norm = NormSpec::L2();
  ClassId y_plus = 0;
  // Optional deterministic per-search cap on feasibility calls.
  std::optional<long> calls_per_search;
  // Approximation quality of the single-point subroutine, when known.
  std::optional<double> beta;
  bool use_helly = true;
  uint64_t seed = 0;
};

struct AttackReport {
  AttackDelta delta;
  long score_before = 0;
  long score_after = 0;
  long tsi_total = 0;
  std::vector<SearchOutcome> calls;
  // (1 - e^-beta) / ceil(k/2); present iff every search completed.
  std::optional<double> bound_factor;
  double beta = 1.0;
  int k = 1;
};

double BoundFactor(int k, double beta = 1.0);

// Greedy budgeted attack: repeatedly rebuilds the influencing regions against
// D u Delta, runs a single-point search with multiplicity
// min(remaining, ceil(k/2)), and inserts the point it returns.
AttackReport Git2aChoppa(const Dataset& train, const Dataset& targets,
                         const GreedyConfig& config);

// True iff tsi_total >= bound_factor * opt_tsi. With beta = 1 the comparison
// is exact in integers against a rational upper bound of 1 - 1/e. Throws
// ContractError when the report carries no bound.
bool VerifyBound(const AttackReport& report, long opt_tsi);

}  // namespace knnpoison

#endif  // KNNPOISON_GREEDY_H_
