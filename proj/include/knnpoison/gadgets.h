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

#ifndef KNNPOISON_GADGETS_H_
#define KNNPOISON_GADGETS_H_

#include <optional>
#include <utility>
#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"
#include "knnpoison/graph.h"
#include "knnpoison/influence.h"

namespace knnpoison {

// Ball family encoding the independent sets of a graph: vertex balls
// B_i = B(r e_i, r) and edge balls B_ij = B(-r(e_i + e_j), 2^{1/p}(r - eps)),
// the latter with multiplicity n.
struct GadgetParams {
  Graph graph;
  double r = 9.0;
  // Defaults to 1 / n.
  std::optional<double> epsilon;
  double p = 2.0;

  double eps() const;
  NormSpec norm() const;
  // Throws InputError for invalid graphs or parameters.
  void Validate() const;
};

struct WeightedBall {
  Ball ball;
  int multiplicity = 1;
};

// Vertex balls in vertex order, then edge balls in edge order.
std::vector<WeightedBall> Phi(const GadgetParams& params);

// The family as regions with value = multiplicity and cost 1, ready for the
// search and the oracle.
std::vector<LabeledBall> AsRegions(const std::vector<WeightedBall>& family);

struct AtkKnnInstance {
  LabelMap labels;
  Dataset train;
  Dataset targets;
  // Label carried by the training points ("+").
  ClassId train_label = 0;
  // Label of the targets and of every attack insertion ("-").
  ClassId attack_label = 1;
};

// Training set and target pool whose influencing regions (k = 1) are exactly
// Phi(params): targets at the ball centers, each with one training point at
// distance equal to the ball's radius.
AtkKnnInstance RealizeAtkKnn(const GadgetParams& params);

// Appends (k-1)/2 copies of (x, train_label) and of (x, target_label) at every
// target x so that the regions at odd k match those at k = 1. Throws
// InputError for even k.
Dataset ExtendK(const Dataset& train, const Dataset& targets, int k,
                ClassId train_label, ClassId target_label);

// Separation between translated copies that keeps every ball of one copy
// disjoint from every ball of another.
double CopySpacing(const GadgetParams& params);

// b copies of (train, targets), copy i translated by i * spacing along the
// first axis.
std::pair<Dataset, Dataset> ExtendB(const Dataset& train,
                                    const Dataset& targets, int b,
                                    double spacing);

}  // namespace knnpoison

#endif  // KNNPOISON_GADGETS_H_
