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

#include "knnpoison/influence.h"

#include "knnpoison/errors.h"
#include "knnpoison/knn.h"

namespace knnpoison {

long AttackDelta::total_multiplicity() const {
  long total = 0;
  for (const Insertion& ins : insertions) total += ins.multiplicity;
  return total;
}

std::vector<LabeledBall> ConstructIrs(const Dataset& train,
                                      const Dataset& targets, ClassId y_plus,
                                      int k, const NormSpec& norm,
                                      ValueMode mode) {
  if (targets.empty()) throw InputError("empty target pool");
  std::vector<LabeledBall> irs;
  irs.reserve(targets.size());
  std::vector<ClassId> labels;
  for (size_t t = 0; t < targets.size(); ++t) {
    const LabeledPoint& target = targets[t];
    const std::vector<Neighbor> nbrs =
        KnnNeighbors(target.features, train, k, norm);
    labels.clear();
    for (const Neighbor& n : nbrs) labels.push_back(n.label);

    LabeledBall ir;
    ir.ball.center = target.features;
    ir.target_index = t;
    if (Plurality(labels) == y_plus) {
      irs.push_back(std::move(ir));
      continue;
    }
    // Relabel the farthest slots one at a time; the first count that flips
    // the vote is the cost and the innermost relabeled slot sets the radius.
    std::vector<ClassId> relabeled = labels;
    for (int cost = 1; cost <= k; ++cost) {
      relabeled[k - cost] = y_plus;
      if (Plurality(relabeled) == y_plus) {
        ir.cost = cost;
        ir.ball.radius = nbrs[k - cost].distance;
        break;
      }
    }
    const int base = mode == ValueMode::kStandard
                         ? 1
                         : Weight(target, y_plus, train, k, norm);
    ir.value = base * target.multiplicity;
    irs.push_back(std::move(ir));
  }
  return irs;
}

Dataset WithInsertions(const Dataset& train, const AttackDelta& delta) {
  Dataset out = train;
  for (const Insertion& ins : delta.insertions) {
    out.Add(ins.point, ins.label, ins.multiplicity);
  }
  return out;
}

long Score(const AttackDelta& delta, const Dataset& targets,
           const Dataset& train, int k, const NormSpec& norm) {
  const Dataset poisoned = WithInsertions(train, delta);
  long score = 0;
  for (const LabeledPoint& t : targets) {
    if (Classify(t.features, poisoned, k, norm) == t.label) score += t.multiplicity;
  }
  return score;
}

long Tsi(std::span<const double> point, int multiplicity,
         std::span<const LabeledBall> irs, const NormSpec& norm) {
  if (multiplicity < 1) throw InputError("multiplicity must be >= 1");
  long total = 0;
  for (const LabeledBall& ir : irs) {
    if (ir.value == 0 || multiplicity < ir.cost) continue;
    if (Distance(point, ir.ball.center, norm) < ir.ball.radius) total += ir.value;
  }
  return total;
}

int Weight(const LabeledPoint& target, ClassId y_plus, const Dataset& train,
           int k, const NormSpec& norm) {
  const ClassId predicted = Classify(target.features, train, k, norm);
  if (target.label == y_plus && predicted != y_plus) return 1;
  if (target.label != y_plus && predicted == target.label) return -1;
  return 0;
}

}  // namespace knnpoison
