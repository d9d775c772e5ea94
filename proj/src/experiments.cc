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

#include "knnpoison/experiments.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "knnpoison/errors.h"
#include "knnpoison/greedy.h"
#include "knnpoison/influence.h"
#include "knnpoison/knn.h"
#include "knnpoison/parallel.h"
#include "knnpoison/pca.h"
#include "knnpoison/search.h"

namespace knnpoison {
namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vector Draw(SynthFamily family, int d, std::mt19937_64& rng) {
  Vector x(d);
  if (family == SynthFamily::kUniform) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : x) v = u(rng);
  } else {
    std::normal_distribution<double> n(0.0, 1.0);
    for (double& v : x) v = n(rng);
  }
  return x;
}

}  // namespace

std::string FamilyName(SynthFamily family) {
  return family == SynthFamily::kUniform ? "uniform" : "normal";
}

SynthFamily ParseFamily(const std::string& text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "uniform") return SynthFamily::kUniform;
  if (lower == "normal") return SynthFamily::kNormal;
  throw InputError("unknown synthetic family: " + text);
}

uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = SplitMix(seed);
  h = SplitMix(h ^ a);
  h = SplitMix(h ^ b);
  return SplitMix(h ^ c);
}

SynthInstance GenSynth(SynthFamily family, int m, int d, int n_targets,
                       uint64_t seed) {
  if (m < 1 || d < 1 || n_targets < 1) {
    throw InputError("synthetic sizes must be positive");
  }
  SynthInstance inst;
  inst.y_plus = inst.labels.Intern("+");
  inst.y_minus = inst.labels.Intern("-");
  inst.train = Dataset(d);
  inst.targets = Dataset(d);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < m; ++i) inst.train.Add(Draw(family, d, rng), inst.y_minus);
  for (int i = 0; i < n_targets; ++i) {
    inst.targets.Add(Draw(family, d, rng), inst.y_plus);
  }
  return inst;
}

std::pair<double, double> MeanAndSem(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

std::vector<SynthCell> RunSynthGrid(const SynthGridSpec& spec) {
  if (spec.trials < 1) throw InputError("trials must be positive");
  struct CellKey {
    SynthFamily family;
    int m, d;
  };
  std::vector<CellKey> keys;
  for (SynthFamily f : spec.families) {
    for (int m : spec.m_list) {
      for (int d : spec.d_list) keys.push_back({f, m, d});
    }
  }
  size_t trials = static_cast<size_t>(spec.trials);
  std::vector<double> scores(keys.size() * trials, 0.0);
  std::vector<char> done(keys.size() * trials, 0);

  ParallelFor(scores.size(), spec.threads, [&](size_t task) {
    size_t cell = task / trials;
    size_t trial = task % trials;
    const CellKey& key = keys[cell];
    uint64_t seed = MixSeed(spec.seed, static_cast<uint64_t>(key.family),
                            (static_cast<uint64_t>(key.m) << 32) | key.d,
                            trial);
    SynthInstance inst =
        GenSynth(key.family, key.m, key.d, spec.n_targets, seed);
    std::vector<LabeledBall> irs = ConstructIrs(
        inst.train, inst.targets, inst.y_plus, spec.k, spec.norm);
    SearchBudget budget;
    budget.wall_time = spec.time_per_attack;
    budget.max_multiplicity = HalfCeil(spec.k);
    budget.max_feasibility_calls = spec.calls_per_attack;
    budget.seed = seed;
    SearchOutcome out = Choppa(irs, budget, spec.norm);
    AttackDelta delta;
    if (out.best_point) {
      delta.insertions.push_back(
          {*out.best_point, inst.y_plus, out.best_multiplicity});
    }
    scores[task] = static_cast<double>(
        Score(delta, inst.targets, inst.train, spec.k, spec.norm));
    done[task] = out.completed ? 1 : 0;
  });

  std::vector<SynthCell> cells;
  for (size_t c = 0; c < keys.size(); ++c) {
    std::vector<double> vals(scores.begin() + c * trials,
                             scores.begin() + (c + 1) * trials);
    SynthCell cell;
    cell.family = keys[c].family;
    cell.m = keys[c].m;
    cell.d = keys[c].d;
    cell.trials = spec.trials;
    std::tie(cell.mean_score, cell.sem) = MeanAndSem(vals);
    cell.completed = static_cast<int>(
        std::count(done.begin() + c * trials, done.begin() + (c + 1) * trials,
                   1));
    cells.push_back(cell);
  }
  return cells;
}

std::vector<DefenseRow> RunDefense(const Dataset& train, const Dataset& targets,
                                   const Dataset& holdout,
                                   const DefenseSpec& spec) {
  if (train.empty() || targets.empty()) {
    throw InputError("defense needs non-empty train and targets");
  }
  if (targets.dim() != train.dim() ||
      (!holdout.empty() && holdout.dim() != train.dim())) {
    throw InputError("defense datasets differ in dimension");
  }
  struct Projected {
    Dataset train, targets, holdout;
    int d_prime = 0;
    bool original = false;
    double var_explained = 1.0;
  };
  int dim = static_cast<int>(train.dim());
  std::vector<Projected> views(spec.d_primes.size());
  for (size_t i = 0; i < spec.d_primes.size(); ++i) {
    int dp = spec.d_primes[i];
    if (dp < 1) throw InputError("d' must be positive");
    Projected& v = views[i];
    if (dp >= dim) {
      v = {train, targets, holdout, dim, true, 1.0};
      continue;
    }
    PcaModel model = PcaFit(train, dp);
    v.train = PcaTransform(model, train);
    v.targets = PcaTransform(model, targets);
    v.holdout = holdout.empty() ? Dataset(dp) : PcaTransform(model, holdout);
    v.d_prime = dp;
    v.var_explained = model.explained_variance_ratio;
  }

  size_t nb = spec.budgets.size();
  std::vector<DefenseRow> rows(views.size() * nb);
  std::vector<double> losses(views.size(), 0.0);
  ParallelFor(views.size(), spec.threads, [&](size_t i) {
    if (!views[i].holdout.empty()) {
      losses[i] =
          ZeroOneLoss(views[i].holdout, views[i].train, spec.k, spec.norm);
    }
  });
  ParallelFor(rows.size(), spec.threads, [&](size_t task) {
    const Projected& v = views[task / nb];
    int b = spec.budgets[task % nb];
    GreedyConfig config;
    config.budget = b;
    config.total_time = spec.time_per_budget_unit * b;
    config.k = spec.k;
    config.norm = spec.norm;
    config.y_plus = spec.y_plus;
    config.calls_per_search = spec.calls_per_search;
    config.seed = MixSeed(spec.seed, static_cast<uint64_t>(v.d_prime),
                          static_cast<uint64_t>(b));
    AttackReport report = Git2aChoppa(v.train, v.targets, config);
    DefenseRow& row = rows[task];
    row.d_prime = v.d_prime;
    row.original = v.original;
    row.budget = b;
    row.score_fraction = static_cast<double>(report.score_after) /
                         static_cast<double>(v.targets.total_weight());
    row.holdout_loss = losses[task / nb];
    row.var_explained = v.var_explained;
  });
  return rows;
}

TwoClassInstance GenTwoClass(const TwoClassSpec& spec) {
  if (spec.d < 1 || spec.per_class < 1 || spec.n_targets < 1 ||
      spec.holdout_per_class < 0) {
    throw InputError("two-class sizes must be positive");
  }
  TwoClassInstance inst;
  ClassId a = inst.labels.Intern("A");
  ClassId b = inst.labels.Intern("B");
  inst.y_plus = a;
  inst.train = Dataset(spec.d);
  inst.targets = Dataset(spec.d);
  inst.holdout = Dataset(spec.d);

  // Per-axis standard deviations decay so that a few directions carry most
  // of the variance.
  std::vector<double> sigma(spec.d);
  for (int j = 0; j < spec.d; ++j) sigma[j] = 1.0 / std::sqrt(1.0 + j / 4.0);
  std::mt19937_64 rng(SplitMix(spec.seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  auto sample = [&](ClassId cls) {
    Vector x(spec.d);
    for (int j = 0; j < spec.d; ++j) x[j] = sigma[j] * normal(rng);
    x[0] += (cls == a ? 0.5 : -0.5) * spec.separation;
    return x;
  };
  for (int i = 0; i < spec.per_class; ++i) {
    inst.train.Add(sample(a), a);
    inst.train.Add(sample(b), b);
  }
  for (int i = 0; i < spec.holdout_per_class; ++i) {
    inst.holdout.Add(sample(a), a);
    inst.holdout.Add(sample(b), b);
  }
  NormSpec l2 = NormSpec::L2();
  int attempts = 0;
  while (static_cast<int>(inst.targets.size()) < spec.n_targets) {
    if (++attempts > 1000 * spec.n_targets) {
      throw LimitError("could not draw enough misclassified targets");
    }
    Vector x = sample(b);
    if (Classify(x, inst.train, 1, l2) == b) inst.targets.Add(std::move(x), a);
  }
  return inst;
}

}  // namespace knnpoison
