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

#ifndef KNNPOISON_PCA_H_
#define KNNPOISON_PCA_H_

#include <vector>

#include "knnpoison/dataset.h"
#include "knnpoison/geometry.h"

namespace knnpoison {

struct PcaModel {
  Vector mean;
  // Row-orthonormal, output_dim x input_dim.
  std::vector<Vector> components;
  // Eigenvalues of the sample covariance, descending, all input_dim of them.
  std::vector<double> eigenvalues;
  double explained_variance_ratio = 1.0;

  size_t input_dim() const { return mean.size(); }
  size_t output_dim() const { return components.size(); }
};

// Top-d' principal axes of the sample covariance. Each component's largest
// coordinate (by magnitude) is made positive. Throws InputError if d' > d,
// d' < 1, or fewer than two samples.
PcaModel PcaFit(const Dataset& train, int d_prime);

// (x - mean) projected onto the components; labels and multiplicities kept.
Dataset PcaTransform(const PcaModel& model, const Dataset& data);

}  // namespace knnpoison

#endif  // KNNPOISON_PCA_H_
