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

#ifndef KNNPOISON_KNN_H_
#define KNNPOISON_KNN_H_

#include <span>
#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"

namespace knnpoison {

struct Neighbor {
  size_t index;  // Row in the training dataset.
  double distance;
  ClassId label;
};

// The k nearest neighbor slots of `query`, ordered by (distance, row). A row
// with multiplicity m fills up to m consecutive slots.
std::vector<Neighbor> KnnNeighbors(std::span<const double> query,
                                   const Dataset& train, int k,
                                   const NormSpec& norm);

// Most frequent label; ties go to the smallest class id.
ClassId Plurality(std::span<const ClassId> labels);

ClassId Classify(std::span<const double> query, const Dataset& train, int k,
                 const NormSpec& norm);

// Multiplicity-weighted fraction of `holdout` that Classify gets wrong.
double ZeroOneLoss(const Dataset& holdout, const Dataset& train, int k,
                   const NormSpec& norm);

}  // namespace knnpoison

#endif  // KNNPOISON_KNN_H_
