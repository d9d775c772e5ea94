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

#ifndef KNNPOISON_SEARCH_H_
#define KNNPOISON_SEARCH_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "knnpoison/geometry.h"
#include "knnpoison/influence.h"

namespace knnpoison {

// A set of influencing regions with a common strict-interior point.
struct Hyperedge {
  std::vector<size_t> members;  // Sorted indices into the region list.
  Vector witness;               // Empty when accepted through Helly.
  int max_cost = 0;
};

struct SearchBudget {
  std::chrono::milliseconds wall_time{std::chrono::hours(24)};
  // Largest multiplicity the attack point may be inserted with.
  int max_multiplicity = 1;
  // Stop after enumerating edges of this size.
  std::optional<int> max_level;
  // Deterministic work cap, counted in feasibility-oracle calls.
  std::optional<long> max_feasibility_calls;
  size_t max_stored_edges = 1'000'000;
  // Accept size d+2 and larger candidates from their subsets alone.
  bool use_helly = true;
  uint64_t seed = 0;
};

struct SearchOutcome {
  std::optional<Vector> best_point;
  int best_multiplicity = 0;
  long best_tsi = 0;
  std::vector<size_t> best_members;
  // True iff the level-wise enumeration ran out of candidates.
  bool completed = false;
  int levels_explored = 0;
  long feasibility_calls = 0;
  long edges_accepted = 0;
  double time_used_ms = 0.0;
};

// Anytime level-wise hypergraph construction over influencing regions that
// returns the insertion point of largest total score increase found. Regions
// with zero radius, zero value, or cost above the budget's multiplicity are
// skipped. The reported multiplicity is the largest cost among regions that
// contain the returned point, which makes best_tsi exactly the score gain of
// that insertion.
SearchOutcome Choppa(std::span<const LabeledBall> irs,
                     const SearchBudget& budget, const NormSpec& norm);

int RequiredMultiplicity(const Hyperedge& edge,
                         std::span<const LabeledBall> irs);

}  // namespace knnpoison

#endif  // KNNPOISON_SEARCH_H_
