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

#ifndef KNNPOISON_EXPERIMENTS_H_
#define KNNPOISON_EXPERIMENTS_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"

namespace knnpoison {

enum class SynthFamily { kUniform, kNormal };

std::string FamilyName(SynthFamily family);
// Accepts "uniform" / "normal" (any case).
SynthFamily ParseFamily(const std::string& text);

// Deterministic 64-bit mix of a seed with cell and trial coordinates.
uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

struct SynthInstance {
  LabelMap labels;
  Dataset train;    // All labeled y_minus.
  Dataset targets;  // All labeled y_plus.
  ClassId y_plus = 0;
  ClassId y_minus = 1;
};

// m training points and n_targets targets drawn i.i.d. from the unit cube
// (uniform) or the standard Gaussian (normal).
SynthInstance GenSynth(SynthFamily family, int m, int d, int n_targets,
                       uint64_t seed);

struct SynthGridSpec {
  std::vector<SynthFamily> families{SynthFamily::kUniform};
  std::vector<int> m_list{8, 16, 32, 64, 128};
  std::vector<int> d_list{2, 4, 8, 16, 32};
  int n_targets = 10;
  int trials = 10;
  int k = 1;
  NormSpec norm = NormSpec::L2();
  uint64_t seed = 0;
  std::chrono::milliseconds time_per_attack{std::chrono::minutes(10)};
  // Deterministic alternative to the wall-clock limit.
  std::optional<long> calls_per_attack;
  int threads = 0;
};

struct SynthCell {
  SynthFamily family;
  int m = 0;
  int d = 0;
  int trials = 0;
  double mean_score = 0.0;
  double sem = 0.0;
  // Trials whose single-point search ran to completion.
  int completed = 0;
};

// Mean attacker score after the best single-point attack (multiplicity
// ceil(k/2)) per (family, m, d) cell, with its standard error.
std::vector<SynthCell> RunSynthGrid(const SynthGridSpec& spec);

// Sample mean and standard error (sample stddev / sqrt(n)).
std::pair<double, double> MeanAndSem(const std::vector<double>& values);

struct DefenseSpec {
  // Target dimensions; values >= the data dimension mean "original".
  std::vector<int> d_primes{2, 8, 32};
  std::vector<int> budgets{1, 5};
  int k = 1;
  NormSpec norm = NormSpec::L2();
  ClassId y_plus = 0;
  // Total time per attack is this many units times the budget.
  std::chrono::milliseconds time_per_budget_unit{std::chrono::seconds(60)};
  std::optional<long> calls_per_search;
  uint64_t seed = 0;
  int threads = 0;
};

struct DefenseRow {
  int d_prime = 0;
  bool original = false;
  int budget = 0;
  double score_fraction = 0.0;
  double holdout_loss = 0.0;
  double var_explained = 1.0;
};

// For each target dimension: fit PCA on train, project all three sets, run
// the greedy attack per budget, and measure holdout loss.
std::vector<DefenseRow> RunDefense(const Dataset& train, const Dataset& targets,
                                   const Dataset& holdout,
                                   const DefenseSpec& spec);

struct TwoClassSpec {
  int d = 64;
  int per_class = 500;
  int holdout_per_class = 100;
  int n_targets = 10;
  double separation = 3.0;
  uint64_t seed = 0;
};

struct TwoClassInstance {
  LabelMap labels;
  Dataset train;
  Dataset targets;
  Dataset holdout;
  ClassId y_plus = 0;
};

// Two anisotropic Gaussian classes whose means differ along the first axis.
// Targets are class-B draws relabeled y_plus (class A) that 1NN on the
// training set currently assigns to class B.
TwoClassInstance GenTwoClass(const TwoClassSpec& spec);

}  // namespace knnpoison

#endif  // KNNPOISON_EXPERIMENTS_H_
