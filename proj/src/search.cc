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

#include "knnpoison/search.h"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "knnpoison/errors.h"

namespace knnpoison {

int RequiredMultiplicity(const Hyperedge& edge,
                         std::span<const LabeledBall> irs) {
  int cost = 0;
  for (size_t m : edge.members) cost = std::max(cost, irs[m].cost);
  return cost;
}

namespace {

using Key = std::vector<uint32_t>;

struct KeyHash {
  size_t operator()(const Key& key) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t v : key) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

struct Edge {
  Key members;
  std::optional<Vector> witness;
};

struct LazyEdge {
  long value_sum;
  Key members;
};

class Searcher {
 public:
  Searcher(std::span<const LabeledBall> irs, const SearchBudget& budget,
           const NormSpec& norm)
      : irs_(irs),
        budget_(budget),
        norm_(norm),
        start_(std::chrono::steady_clock::now()),
        deadline_(start_ + budget.wall_time) {}

  SearchOutcome Run() {
    for (size_t i = 0; i < irs_.size(); ++i) {
      const LabeledBall& ir = irs_[i];
      if (ir.ball.radius > 0.0 && ir.value != 0 &&
          ir.cost <= budget_.max_multiplicity) {
        active_.push_back(static_cast<uint32_t>(i));
      }
    }
    if (active_.empty()) {
      outcome_.completed = true;
      return Finish();
    }
    dim_ = irs_[active_.front()].ball.dim();
    std::vector<Ball> balls;
    for (uint32_t i : active_) balls.push_back(irs_[i].ball);
    margin_ = StrictMargin(balls);

    std::vector<Edge> level;
    outcome_.levels_explored = 1;
    for (uint32_t i : active_) {
      if (OutOfBudget()) return Finish();
      Key key{i};
      std::optional<Vector> witness = Feasible(key, nullptr);
      if (!witness) continue;
      Consider(key, *witness);
      level.push_back({std::move(key), std::move(witness)});
    }

    int size = 1;
    while (!level.empty()) {
      if (budget_.max_level && size >= *budget_.max_level) return Stop();
      std::unordered_set<Key, KeyHash> accepted;
      accepted.reserve(level.size() * 2);
      for (const Edge& e : level) accepted.insert(e.members);

      std::vector<Edge> next;
      ++outcome_.levels_explored;
      const int m = size + 1;
      for (const Edge& e : level) {
        auto first = std::upper_bound(active_.begin(), active_.end(),
                                      e.members.back());
        for (auto it = first; it != active_.end(); ++it) {
          if (OutOfBudget()) return Stop();
          Key cand = e.members;
          cand.push_back(*it);
          if (!AllSubsetsAccepted(cand, accepted)) continue;
          if (m == 2 && !PairwiseIntersects(irs_[cand[0]].ball,
                                            irs_[cand[1]].ball, norm_,
                                            margin_)) {
            continue;
          }
          if (budget_.use_helly && m - 1 >= static_cast<int>(dim_) + 1) {
            RecordLazy(cand);
            next.push_back({std::move(cand), std::nullopt});
            continue;
          }
          const Vector* warm = e.witness ? &*e.witness : nullptr;
          std::optional<Vector> witness = Feasible(cand, warm);
          if (!witness) continue;
          Consider(cand, *witness);
          next.push_back({std::move(cand), std::move(witness)});
        }
        if (next.size() > budget_.max_stored_edges) return Stop();
      }
      outcome_.edges_accepted += static_cast<long>(next.size());
      level = std::move(next);
      ++size;
    }
    outcome_.completed = true;
    MaterializeLazy();
    return Finish();
  }

 private:
  bool OutOfBudget() const {
    if (budget_.max_feasibility_calls &&
        outcome_.feasibility_calls >= *budget_.max_feasibility_calls) {
      return true;
    }
    return std::chrono::steady_clock::now() >= deadline_;
  }

  static bool AllSubsetsAccepted(
      const Key& cand, const std::unordered_set<Key, KeyHash>& accepted) {
    // Dropping the last member yields the parent edge, which is accepted.
    Key sub(cand.size() - 1);
    for (size_t skip = 0; skip + 1 < cand.size(); ++skip) {
      size_t w = 0;
      for (size_t i = 0; i < cand.size(); ++i) {
        if (i != skip) sub[w++] = cand[i];
      }
      if (!accepted.contains(sub)) return false;
    }
    return true;
  }

  std::optional<Vector> Feasible(const Key& members, const Vector* warm) {
    std::vector<Ball> balls;
    balls.reserve(members.size());
    for (uint32_t i : members) balls.push_back(irs_[i].ball);
    FeasibilityOptions options;
    options.margin = margin_;
    options.seed = budget_.seed;
    options.warm_start = warm;
    ++outcome_.feasibility_calls;
    FeasibilityResult r = IntersectWitness(balls, norm_, options);
    if (!r.has_witness()) return std::nullopt;
    return std::move(r.point);
  }

  void Consider(const Key& members, const Vector& witness) {
    const long tsi = Tsi(witness, budget_.max_multiplicity, irs_, norm_);
    const bool better =
        tsi > outcome_.best_tsi ||
        (tsi == outcome_.best_tsi && tsi > 0 &&
         std::lexicographical_compare(members.begin(), members.end(),
                                      outcome_.best_members.begin(),
                                      outcome_.best_members.end()));
    if (!better) return;
    outcome_.best_tsi = tsi;
    outcome_.best_point = witness;
    outcome_.best_members.assign(members.begin(), members.end());
    int mult = 0;
    for (const LabeledBall& ir : irs_) {
      if (ir.value == 0 || ir.cost > budget_.max_multiplicity) continue;
      if (Distance(witness, ir.ball.center, norm_) < ir.ball.radius) {
        mult = std::max(mult, ir.cost);
      }
    }
    outcome_.best_multiplicity = mult;
  }

  void RecordLazy(const Key& members) {
    long sum = 0;
    for (uint32_t i : members) sum += irs_[i].value;
    lazy_.push_back({sum, members});
    if (lazy_.size() > 4 * kLazyKeep) PruneLazy();
  }

  void PruneLazy() {
    std::sort(lazy_.begin(), lazy_.end(),
              [](const LazyEdge& a, const LazyEdge& b) {
                if (a.value_sum != b.value_sum) return a.value_sum > b.value_sum;
                return a.members < b.members;
              });
    if (lazy_.size() > kLazyKeep) lazy_.resize(kLazyKeep);
  }

  // Helly-accepted edges carry no witness; the best of them gets one here.
  void MaterializeLazy() {
    PruneLazy();
    for (const LazyEdge& e : lazy_) {
      if (e.value_sum < outcome_.best_tsi) break;
      std::optional<Vector> witness = Feasible(e.members, nullptr);
      if (witness) Consider(e.members, *witness);
    }
  }

  // Early exit: lazily accepted edges found so far still get witnesses.
  SearchOutcome Stop() {
    MaterializeLazy();
    return Finish();
  }

  SearchOutcome Finish() {
    outcome_.time_used_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start_)
            .count();
    return std::move(outcome_);
  }

  static constexpr size_t kLazyKeep = 64;

  std::span<const LabeledBall> irs_;
  SearchBudget budget_;
  NormSpec norm_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<uint32_t> active_;
  size_t dim_ = 0;
  double margin_ = 0.0;
  std::vector<LazyEdge> lazy_;
  SearchOutcome outcome_;
};

}  // namespace

SearchOutcome Choppa(std::span<const LabeledBall> irs,
                     const SearchBudget& budget, const NormSpec& norm) {
  if (budget.max_multiplicity < 1) {
    throw InputError("search multiplicity budget must be >= 1");
  }
  if (budget.wall_time.count() <= 0) {
    throw InputError("search wall time must be positive");
  }
  return Searcher(irs, budget, norm).Run();
}

}  // namespace knnpoison
