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

#include "knnpoison/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>

#include "knnpoison/errors.h"
#include "knnpoison/knn.h"

namespace knnpoison {

namespace {

struct Verdict {
  bool feasible = false;
  Vector point;
};

// Exact axis-wise interval intersection, written independently of the
// production l_inf path.
Verdict BoxVerdict(const std::vector<const Ball*>& balls, double margin) {
  const size_t d = balls.front()->dim();
  Verdict v;
  v.point.resize(d);
  for (size_t axis = 0; axis < d; ++axis) {
    double lo = balls.front()->center[axis] - balls.front()->radius;
    double hi = balls.front()->center[axis] + balls.front()->radius;
    for (const Ball* b : balls) {
      lo = std::max(lo, b->center[axis] - b->radius);
      hi = std::min(hi, b->center[axis] + b->radius);
    }
    if (!(hi - lo >= 2.0 * margin) || !(hi > lo)) return v;
    v.point[axis] = 0.5 * (lo + hi);
  }
  v.feasible = true;
  return v;
}

double L2(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Central-cut ellipsoid method on phi(x) = max_i (||x - c_i|| - r_i), started
// from the smallest ball (every deep point lies in it). Each step either finds
// a point of depth >= margin or certifies, through the subgradient lower
// bound phi(x) - sqrt(g' P g) over the current ellipsoid, that none exists.
Verdict EllipsoidVerdict(const std::vector<const Ball*>& balls, double margin) {
  const size_t d = balls.front()->dim();
  const Ball* smallest = balls.front();
  for (const Ball* b : balls) {
    if (b->radius < smallest->radius) smallest = b;
  }
  Vector x = smallest->center;
  // P is stored dense, row-major.
  std::vector<double> P(d * d, 0.0);
  for (size_t i = 0; i < d; ++i) P[i * d + i] = smallest->radius * smallest->radius;
  Vector g(d), Pg(d);
  Verdict best;
  double best_value = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(d);
  const int max_steps = 4000 + 400 * static_cast<int>(d * (d + 1));
  for (int step = 0; step < max_steps; ++step) {
    double value = -std::numeric_limits<double>::infinity();
    const Ball* active = nullptr;
    for (const Ball* b : balls) {
      const double v = L2(x, b->center) - b->radius;
      if (v > value) {
        value = v;
        active = b;
      }
    }
    if (value < best_value) {
      best_value = value;
      best.point = x;
    }
    if (value <= -margin) return {true, x};
    const double dist = L2(x, active->center);
    for (size_t i = 0; i < d; ++i) g[i] = (x[i] - active->center[i]) / dist;
    double gpg = 0.0;
    for (size_t i = 0; i < d; ++i) {
      Pg[i] = 0.0;
      for (size_t j = 0; j < d; ++j) Pg[i] += P[i * d + j] * g[j];
      gpg += g[i] * Pg[i];
    }
    const double gamma = std::sqrt(std::max(gpg, 0.0));
    if (value - gamma > -margin) return {false, best.point};
    if (!(gamma > 0.0)) break;
    for (double& v : Pg) v /= gamma;
    if (d == 1) {
      x[0] -= 0.5 * Pg[0];
      P[0] *= 0.25;
      continue;
    }
    for (size_t i = 0; i < d; ++i) x[i] -= Pg[i] / (n + 1.0);
    const double a = n * n / (n * n - 1.0), c = 2.0 / (n + 1.0);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = i; j < d; ++j) {
        const double v = a * (P[i * d + j] - c * Pg[i] * Pg[j]);
        P[i * d + j] = v;
        P[j * d + i] = v;
      }
    }
  }
  // Undecided within the step cap: the sign of the best value decides.
  best.feasible = best_value <= -margin;
  return best;
}

class SubsetOracle {
 public:
  SubsetOracle(std::span<const LabeledBall> irs, const NormSpec& norm,
               double margin, uint64_t seed)
      : irs_(irs), norm_(norm), margin_(margin), seed_(seed) {}

  Verdict Check(const std::vector<size_t>& members) {
    ++checked_;
    std::vector<const Ball*> balls;
    for (size_t m : members) balls.push_back(&irs_[m].ball);
    if (norm_.is_inf()) return BoxVerdict(balls, margin_);
    Verdict v = EllipsoidVerdict(balls, margin_);
    std::vector<Ball> copy;
    for (const Ball* b : balls) copy.push_back(*b);
    FeasibilityOptions options;
    options.margin = margin_;
    options.seed = seed_;
    if (IntersectWitness(copy, norm_, options).has_witness() != v.feasible) {
      ++disagreements_;
    }
    return v;
  }

  long checked() const { return checked_; }
  long disagreements() const { return disagreements_; }

 private:
  std::span<const LabeledBall> irs_;
  NormSpec norm_;
  double margin_;
  uint64_t seed_;
  long checked_ = 0;
  long disagreements_ = 0;
};

void CheckNorm(const NormSpec& norm) {
  if (!norm.is_inf() && norm.p() != 2.0) {
    throw InputError("brute-force oracle supports only l2 and linf");
  }
}

std::vector<size_t> UsableRegions(std::span<const LabeledBall> irs,
                                  int multiplicity) {
  std::vector<size_t> usable;
  for (size_t i = 0; i < irs.size(); ++i) {
    if (irs[i].ball.radius > 0.0 && irs[i].value != 0 &&
        irs[i].cost <= multiplicity) {
      usable.push_back(i);
    }
  }
  return usable;
}

double MarginOf(std::span<const LabeledBall> irs,
                const std::vector<size_t>& usable) {
  double r = std::numeric_limits<double>::infinity();
  for (size_t i : usable) r = std::min(r, irs[i].ball.radius);
  return kStrictFactor * r;
}

}  // namespace

SingleOracleResult BruteSingle(std::span<const LabeledBall> irs,
                               int multiplicity, const NormSpec& norm,
                               const OracleLimits& limits, uint64_t seed) {
  CheckNorm(norm);
  if (multiplicity < 1) throw InputError("multiplicity must be >= 1");
  std::vector<size_t> order = UsableRegions(irs, multiplicity);
  if (static_cast<int>(order.size()) > limits.max_irs) {
    throw LimitError("oracle refuses " + std::to_string(order.size()) +
                     " regions (limit " + std::to_string(limits.max_irs) + ")");
  }
  SingleOracleResult result;
  if (order.empty()) return result;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return irs[a].value > irs[b].value;
  });
  std::vector<long> suffix(order.size() + 1, 0);
  for (size_t i = order.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1] + std::max(0, irs[order[i]].value);
  }

  SubsetOracle oracle(irs, norm, MarginOf(irs, order), seed);
  std::vector<size_t> chosen;
  long best = 0;
  std::function<void(size_t, long)> descend = [&](size_t pos, long value) {
    if (value + suffix[pos] <= best || pos == order.size()) return;
    chosen.push_back(order[pos]);
    Verdict v = oracle.Check(chosen);
    if (v.feasible) {
      const long gained = value + irs[order[pos]].value;
      if (gained > best) {
        best = gained;
        result.witness = v.point;
        result.members = chosen;
      }
      descend(pos + 1, gained);
    }
    chosen.pop_back();
    descend(pos + 1, value);
  };
  descend(0, 0);

  result.best_tsi = best;
  if (result.witness) {
    result.best_tsi =
        std::max(best, Tsi(*result.witness, multiplicity, irs, norm));
    std::sort(result.members.begin(), result.members.end());
  }
  result.subsets_checked = oracle.checked();
  result.disagreements = oracle.disagreements();
  return result;
}

long BruteAttack(const Dataset& train, const Dataset& targets, ClassId y_plus,
                 int k, int budget, const NormSpec& norm,
                 const OracleLimits& limits,
                 const BruteAttackOptions& options) {
  CheckNorm(norm);
  if (budget < 0) throw InputError("budget must be non-negative");
  if (budget > limits.max_budget) {
    throw LimitError("oracle refuses budget " + std::to_string(budget) +
                     " (limit " + std::to_string(limits.max_budget) + ")");
  }
  const long base = Score({}, targets, train, k, norm);
  if (budget == 0) return base;

  const std::vector<LabeledBall> irs =
      ConstructIrs(train, targets, y_plus, k, norm);
  const std::vector<size_t> usable = UsableRegions(irs, k);
  if (static_cast<int>(usable.size()) > limits.max_irs) {
    throw LimitError("oracle refuses " + std::to_string(usable.size()) +
                     " regions (limit " + std::to_string(limits.max_irs) + ")");
  }
  if (usable.empty()) return base;

  // One witness per feasible subset (depth-first, supersets of infeasible
  // subsets skipped).
  SubsetOracle oracle(irs, norm, MarginOf(irs, usable), options.seed);
  std::vector<Vector> points;
  std::vector<size_t> chosen;
  std::function<void(size_t)> grow = [&](size_t pos) {
    for (size_t i = pos; i < usable.size(); ++i) {
      chosen.push_back(usable[i]);
      Verdict v = oracle.Check(chosen);
      if (v.feasible) {
        points.push_back(std::move(v.point));
        grow(i + 1);
      }
      chosen.pop_back();
    }
  };
  grow(0);

  if (options.extra_random_points > 0) {
    const size_t d = train.dim();
    Vector lo(d, std::numeric_limits<double>::infinity());
    Vector hi(d, -std::numeric_limits<double>::infinity());
    for (size_t i : usable) {
      for (size_t a = 0; a < d; ++a) {
        lo[a] = std::min(lo[a], irs[i].ball.center[a] - irs[i].ball.radius);
        hi[a] = std::max(hi[a], irs[i].ball.center[a] + irs[i].ball.radius);
      }
    }
    std::mt19937_64 rng(options.seed ^ 0x5bd1e995u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < options.extra_random_points; ++s) {
      Vector x(d);
      for (size_t a = 0; a < d; ++a) x[a] = lo[a] + (hi[a] - lo[a]) * unit(rng);
      points.push_back(std::move(x));
    }
  }

  // Only which regions contain an insertion matters; keep one point per
  // coverage pattern. With an all-y_plus pool extra y_plus copies never
  // lower any vote, so dominated patterns are dropped as well.
  bool homogeneous = true;
  for (const LabeledPoint& t : targets) homogeneous &= (t.label == y_plus);
  std::vector<std::pair<uint64_t, Vector>> patterns;
  std::set<uint64_t> seen;
  for (Vector& x : points) {
    uint64_t mask = 0;
    for (size_t j = 0; j < usable.size(); ++j) {
      const Ball& b = irs[usable[j]].ball;
      if (Distance(x, b.center, norm) < b.radius) mask |= uint64_t{1} << j;
    }
    if (mask == 0 || !seen.insert(mask).second) continue;
    patterns.emplace_back(mask, std::move(x));
  }
  if (homogeneous) {
    std::vector<std::pair<uint64_t, Vector>> maximal;
    for (const auto& [mask, x] : patterns) {
      bool dominated = false;
      for (const auto& other : patterns) {
        if (other.first != mask && (other.first & mask) == mask) {
          dominated = true;
          break;
        }
      }
      if (!dominated) maximal.emplace_back(mask, x);
    }
    patterns = std::move(maximal);
  }

  long best = base;
  AttackDelta delta;
  std::function<void(size_t, int)> pick = [&](size_t from, int left) {
    if (!delta.insertions.empty()) {
      best = std::max(best, Score(delta, targets, train, k, norm));
    }
    if (left == 0) return;
    for (size_t c = from; c < patterns.size(); ++c) {
      for (int m = 1; m <= left; ++m) {
        delta.insertions.push_back({patterns[c].second, y_plus, m});
        pick(c + 1, left - m);
        delta.insertions.pop_back();
      }
    }
  };
  pick(0, budget);
  return best;
}

int BruteMis(const Graph& graph, const OracleLimits& limits) {
  graph.Validate();
  if (graph.n > limits.max_vertices || graph.n > 64) {
    throw LimitError("oracle refuses " + std::to_string(graph.n) +
                     " vertices (limit " + std::to_string(limits.max_vertices) +
                     ")");
  }
  std::vector<uint64_t> adj(graph.n, 0);
  for (auto [u, v] : graph.edges) {
    adj[u] |= uint64_t{1} << v;
    adj[v] |= uint64_t{1} << u;
  }
  // Branch on a vertex of maximum degree: leave it out, or take it and drop
  // its neighbors. Vertices of degree 0 are always taken.
  std::function<int(uint64_t)> solve = [&](uint64_t alive) -> int {
    if (alive == 0) return 0;
    int pivot = -1;
    int pivot_degree = -1;
    for (uint64_t rest = alive; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int degree = std::popcount(adj[v] & alive);
      if (degree == 0) return 1 + solve(alive & ~(uint64_t{1} << v));
      if (degree > pivot_degree) {
        pivot = v;
        pivot_degree = degree;
      }
    }
    const uint64_t bit = uint64_t{1} << pivot;
    const int without = solve(alive & ~bit);
    const int with = 1 + solve(alive & ~bit & ~adj[pivot]);
    return std::max(without, with);
  };
  const uint64_t all =
      graph.n == 64 ? ~uint64_t{0} : (uint64_t{1} << graph.n) - 1;
  return solve(all);
}

}  // namespace knnpoison
