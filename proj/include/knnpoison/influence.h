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

#ifndef KNNPOISON_INFLUENCE_H_
#define KNNPOISON_INFLUENCE_H_

#include <span>
#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"

namespace knnpoison {

// Influencing region of one target: inserting the attack label strictly
// inside `ball` with multiplicity >= cost flips the target's prediction.
struct LabeledBall {
  Ball ball;
  int value = 0;
  int cost = 0;
  size_t target_index = 0;
};

struct Insertion {
  Vector point;
  ClassId label = 0;
  int multiplicity = 1;
};

struct AttackDelta {
  std::vector<Insertion> insertions;

  long total_multiplicity() const;
};

enum class ValueMode {
  // v = 1 when the target is not yet predicted as the attack label.
  kStandard,
  // v = Weight(): +1 / -1 / 0, for target pools with mixed labels.
  kWeighted,
};

// ceil(k / 2): the largest cost any influencing region can have.
inline int HalfCeil(int k) { return (k + 1) / 2; }

// One LabeledBall per target row. Targets already predicted `y_plus` get a
// zero-radius, zero-cost, zero-value ball. Values are scaled by the target's
// multiplicity.
std::vector<LabeledBall> ConstructIrs(const Dataset& train,
                                      const Dataset& targets, ClassId y_plus,
                                      int k, const NormSpec& norm,
                                      ValueMode mode = ValueMode::kStandard);

// D u Delta with the insertions appended after the training rows.
Dataset WithInsertions(const Dataset& train, const AttackDelta& delta);

// Number of targets (with multiplicity) that the poisoned classifier labels
// correctly. Always evaluated by reclassification.
long Score(const AttackDelta& delta, const Dataset& targets,
           const Dataset& train, int k, const NormSpec& norm);

// Total score increase of inserting `point` with `multiplicity` copies:
// sum of v over regions with ||point - c|| < r and multiplicity >= cost.
long Tsi(std::span<const double> point, int multiplicity,
         std::span<const LabeledBall> irs, const NormSpec& norm);

int Weight(const LabeledPoint& target, ClassId y_plus, const Dataset& train,
           int k, const NormSpec& norm);

}  // namespace knnpoison

#endif  // KNNPOISON_INFLUENCE_H_
