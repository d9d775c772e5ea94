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

#include "knnpoison/knn.h"

#include <algorithm>
#include <numeric>

#include "knnpoison/errors.h"

namespace knnpoison {

std::vector<Neighbor> KnnNeighbors(std::span<const double> query,
                                   const Dataset& train, int k,
                                   const NormSpec& norm) {
  if (k < 1) throw InputError("k must be positive");
  if (train.empty()) throw InputError("empty training set");
  if (query.size() != train.dim()) throw InputError("query dimension mismatch");
  if (train.total_weight() < k) {
    throw InputError("training weight is smaller than k");
  }
  std::vector<double> dist(train.size());
  for (size_t i = 0; i < train.size(); ++i) {
    dist[i] = Distance(query, train[i].features, norm);
  }
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  const size_t head = std::min(order.size(), static_cast<size_t>(k));
  std::partial_sort(order.begin(), order.begin() + head, order.end(),
                    [&](size_t a, size_t b) {
                      if (dist[a] != dist[b]) return dist[a] < dist[b];
                      return a < b;
                    });
  std::vector<Neighbor> out;
  out.reserve(k);
  for (size_t idx : order) {
    for (int c = 0; c < train[idx].multiplicity; ++c) {
      if (static_cast<int>(out.size()) == k) return out;
      out.push_back({idx, dist[idx], train[idx].label});
    }
    if (static_cast<int>(out.size()) == k) break;
  }
  return out;
}

ClassId Plurality(std::span<const ClassId> labels) {
  if (labels.empty()) throw InputError("plurality of no votes");
  const ClassId top = *std::max_element(labels.begin(), labels.end());
  std::vector<int> votes(top + 1, 0);
  for (ClassId c : labels) ++votes[c];
  return static_cast<ClassId>(
      std::max_element(votes.begin(), votes.end()) - votes.begin());
}

ClassId Classify(std::span<const double> query, const Dataset& train, int k,
                 const NormSpec& norm) {
  std::vector<ClassId> labels;
  for (const Neighbor& n : KnnNeighbors(query, train, k, norm)) {
    labels.push_back(n.label);
  }
  return Plurality(labels);
}

double ZeroOneLoss(const Dataset& holdout, const Dataset& train, int k,
                   const NormSpec& norm) {
  if (holdout.empty()) throw InputError("empty holdout set");
  long wrong = 0;
  for (const LabeledPoint& p : holdout) {
    if (Classify(p.features, train, k, norm) != p.label) wrong += p.multiplicity;
  }
  return static_cast<double>(wrong) / static_cast<double>(holdout.total_weight());
}

}  // namespace knnpoison
