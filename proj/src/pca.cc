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

#include "knnpoison/pca.h"

#include <Eigen/Dense>
#include <cmath>

#include "knnpoison/errors.h"

namespace knnpoison {

PcaModel PcaFit(const Dataset& train, int d_prime) {
  const size_t d = train.dim();
  if (d_prime < 1 || static_cast<size_t>(d_prime) > d) {
    throw InputError("target dimension must lie in [1, d]");
  }
  if (train.size() < 2) throw InputError("PCA needs at least two samples");

  Eigen::MatrixXd x(train.size(), d);
  for (size_t i = 0; i < train.size(); ++i) {
    for (size_t j = 0; j < d; ++j) x(i, j) = train[i].features[j];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov =
      (x.transpose() * x) / static_cast<double>(train.size() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw InputError("covariance eigendecomposition failed");
  }
  // Eigen sorts ascending.
  const Eigen::VectorXd values = solver.eigenvalues().reverse();
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  PcaModel model;
  model.mean.assign(mean.data(), mean.data() + d);
  double total = 0.0, kept = 0.0;
  for (size_t i = 0; i < d; ++i) {
    const double v = std::max(0.0, values(i));
    model.eigenvalues.push_back(v);
    total += v;
    if (i < static_cast<size_t>(d_prime)) kept += v;
  }
  model.explained_variance_ratio =
      (total > 0.0 && static_cast<size_t>(d_prime) < d) ? kept / total : 1.0;
  for (int c = 0; c < d_prime; ++c) {
    Vector axis(vectors.col(c).data(), vectors.col(c).data() + d);
    size_t lead = 0;
    for (size_t j = 1; j < d; ++j) {
      if (std::abs(axis[j]) > std::abs(axis[lead])) lead = j;
    }
    if (axis[lead] < 0.0) {
      for (double& v : axis) v = -v;
    }
    model.components.push_back(std::move(axis));
  }
  return model;
}

Dataset PcaTransform(const PcaModel& model, const Dataset& data) {
  if (data.dim() != model.input_dim()) {
    throw InputError("dataset dimension does not match the PCA model");
  }
  Dataset out(model.output_dim());
  Vector centered(model.input_dim());
  for (const LabeledPoint& p : data) {
    for (size_t j = 0; j < centered.size(); ++j) {
      centered[j] = p.features[j] - model.mean[j];
    }
    Vector y(model.output_dim(), 0.0);
    for (size_t c = 0; c < y.size(); ++c) {
      const Vector& axis = model.components[c];
      for (size_t j = 0; j < centered.size(); ++j) y[c] += axis[j] * centered[j];
    }
    out.Add(std::move(y), p.label, p.multiplicity);
  }
  return out;
}

}  // namespace knnpoison
