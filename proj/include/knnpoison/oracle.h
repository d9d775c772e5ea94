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

#ifndef KNNPOISON_ORACLE_H_
#define KNNPOISON_ORACLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"
#include "knnpoison/graph.h"
#include "knnpoison/influence.h"

namespace knnpoison {

// Size limits checked before any exponential enumeration starts.
struct OracleLimits {
  int max_irs = 14;
  int max_budget = 4;
  int max_vertices = 18;
};

struct SingleOracleResult {
  long best_tsi = 0;
  std::optional<Vector> witness;
  std::vector<size_t> members;
  long subsets_checked = 0;
  // Subsets on which the oracle's feasibility verdict differed from
  // IntersectWitness (finite-p norms only).
  long disagreements = 0;
};

// Optimal single-point total score increase by branch and bound over subsets
// of regions, descending by value. Feasibility uses exact interval arithmetic
// under l_inf and cyclic projections plus random sampling under l2; neither
// path calls IntersectWitness except for the l2 cross-check. Values are
// assumed non-negative. Throws LimitError above `limits.max_irs` usable
// regions and InputError for norms other than l2 / l_inf.
SingleOracleResult BruteSingle(std::span<const LabeledBall> irs,
                               int multiplicity, const NormSpec& norm,
                               const OracleLimits& limits = {},
                               uint64_t seed = 0);

struct BruteAttackOptions {
  // Random insertion points added to the structured candidate set.
  int extra_random_points = 0;
  uint64_t seed = 0;
};

// Best reclassification score reachable with at most `budget` inserted
// copies of `y_plus`, searching over one witness per feasible region subset.
long BruteAttack(const Dataset& train, const Dataset& targets, ClassId y_plus,
                 int k, int budget, const NormSpec& norm,
                 const OracleLimits& limits = {},
                 const BruteAttackOptions& options = {});

// Exact maximum independent set size.
int BruteMis(const Graph& graph, const OracleLimits& limits = {});

}  // namespace knnpoison

#endif  // KNNPOISON_ORACLE_H_
