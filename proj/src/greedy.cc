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

#include "knnpoison/greedy.h"

#include <cmath>

#include "knnpoison/errors.h"

namespace knnpoison {

double BoundFactor(int k, double beta) {
  return (1.0 - std::exp(-beta)) / HalfCeil(k);
}

AttackReport Git2aChoppa(const Dataset& train, const Dataset& targets,
                         const GreedyConfig& config) {
  if (config.budget < 0) throw InputError("budget must be non-negative");
  if (config.k < 1) throw InputError("k must be positive");
  AttackReport report;
  report.k = config.k;
  report.score_before = Score({}, targets, train, config.k, config.norm);

  const auto per_call =
      config.budget > 0 ? config.total_time / config.budget : config.total_time;
  int remaining = config.budget;
  bool all_completed = true;
  while (remaining > 0) {
    const Dataset poisoned = WithInsertions(train, report.delta);
    const std::vector<LabeledBall> irs = ConstructIrs(
        poisoned, targets, config.y_plus, config.k, config.norm);
    SearchBudget budget;
    budget.wall_time = std::max(per_call, std::chrono::milliseconds(1));
    budget.max_multiplicity = std::min(remaining, HalfCeil(config.k));
    budget.max_feasibility_calls = config.calls_per_search;
    budget.use_helly = config.use_helly;
    budget.seed = config.seed + report.calls.size();
    SearchOutcome outcome = Choppa(irs, budget, config.norm);
    all_completed = all_completed && outcome.completed;
    const bool useful = outcome.best_point && outcome.best_tsi > 0 &&
                        outcome.best_multiplicity <= remaining;
    if (useful) {
      report.delta.insertions.push_back(
          {*outcome.best_point, config.y_plus, outcome.best_multiplicity});
      report.tsi_total += outcome.best_tsi;
      remaining -= outcome.best_multiplicity;
    }
    report.calls.push_back(std::move(outcome));
    if (!useful) break;
  }

  report.score_after =
      Score(report.delta, targets, train, config.k, config.norm);
  if (config.beta) {
    report.beta = *config.beta;
    report.bound_factor = BoundFactor(config.k, report.beta);
  } else if (all_completed) {
    report.bound_factor = BoundFactor(config.k);
  }
  return report;
}

bool VerifyBound(const AttackReport& report, long opt_tsi) {
  if (!report.bound_factor) {
    throw ContractError("attack report has no approximation bound");
  }
  if (opt_tsi <= 0) return true;
  if (report.beta == 1.0) {
    // 1 - 1/e = 0.6321205588285576784044762...; the numerator rounds up.
    constexpr __int128 kNum = 632120558828557679;
    constexpr __int128 kDen = 1000000000000000000;
    const __int128 lhs = static_cast<__int128>(HalfCeil(report.k)) *
                         report.tsi_total * kDen;
    return lhs >= kNum * static_cast<__int128>(opt_tsi);
  }
  return static_cast<long double>(report.tsi_total) >=
         static_cast<long double>(*report.bound_factor) * opt_tsi;
}

}  // namespace knnpoison
