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

#ifndef KNNPOISON_DATASET_H_
#define KNNPOISON_DATASET_H_

#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "knnpoison/geometry.h"

namespace knnpoison {

using ClassId = int;

// Interns label tokens to dense class ids in first-seen order. Datasets that
// are compared or combined must share one LabelMap.
class LabelMap {
 public:
  ClassId Intern(const std::string& token);
  // Throws InputError for unknown tokens.
  ClassId Find(const std::string& token) const;
  const std::string& Name(ClassId id) const;
  size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, ClassId> ids_;
  std::vector<std::string> names_;
};

struct LabeledPoint {
  Vector features;
  ClassId label = 0;
  int multiplicity = 1;
};

// An ordered multiset of labeled points of uniform dimension. Insertion order
// is the distance tie-breaker for nearest-neighbor queries.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(size_t dim) : dim_(dim), dim_fixed_(true) {}

  // Throws InputError on a dimension mismatch or multiplicity < 1.
  void Add(LabeledPoint point);
  void Add(Vector features, ClassId label, int multiplicity = 1);
  void Append(const Dataset& other);

  size_t dim() const { return dim_; }
  size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  // Sum of multiplicities.
  long total_weight() const;
  const LabeledPoint& operator[](size_t i) const { return points_[i]; }
  const std::vector<LabeledPoint>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  size_t dim_ = 0;
  bool dim_fixed_ = false;
  std::vector<LabeledPoint> points_;
};

// CSV layout: header "f0,...,f{d-1},label[,mult]", one point per row.
Dataset ReadDatasetCsv(std::istream& in, LabelMap& labels);
Dataset ReadDatasetCsv(const std::string& path, LabelMap& labels);
void WriteDatasetCsv(std::ostream& out, const Dataset& data,
                     const LabelMap& labels, bool with_mult = true);
void WriteDatasetCsv(const std::string& path, const Dataset& data,
                     const LabelMap& labels, bool with_mult = true);

// Shortest decimal text that parses back to exactly `value`.
std::string FormatReal(double value);

}  // namespace knnpoison

#endif  // KNNPOISON_DATASET_H_
