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

#include "knnpoison/gadgets.h"

#include <cmath>

#include "knnpoison/errors.h"

namespace knnpoison {

double GadgetParams::eps() const {
  return epsilon ? *epsilon : 1.0 / std::max(1, graph.n);
}

NormSpec GadgetParams::norm() const {
  return p == 2.0 ? NormSpec::L2() : NormSpec::Lp(p);
}

void GadgetParams::Validate() const {
  graph.Validate();
  if (graph.n < 1) throw InputError("gadget graph needs at least one vertex");
  if (!(r > 0.0)) throw InputError("gadget radius r must be positive");
  if (!(eps() > 0.0) || !(eps() < r)) {
    throw InputError("gadget epsilon must lie in (0, r)");
  }
  norm();
}

std::vector<WeightedBall> Phi(const GadgetParams& params) {
  params.Validate();
  const int n = params.graph.n;
  const double edge_radius =
      std::pow(2.0, 1.0 / params.p) * (params.r - params.eps());
  std::vector<WeightedBall> family;
  for (int i = 0; i < n; ++i) {
    Vector c(n, 0.0);
    c[i] = params.r;
    family.push_back({Ball{std::move(c), params.r}, 1});
  }
  for (auto [i, j] : params.graph.edges) {
    Vector c(n, 0.0);
    c[i] = -params.r;
    c[j] = -params.r;
    family.push_back({Ball{std::move(c), edge_radius}, n});
  }
  return family;
}

std::vector<LabeledBall> AsRegions(const std::vector<WeightedBall>& family) {
  std::vector<LabeledBall> irs;
  for (size_t i = 0; i < family.size(); ++i) {
    irs.push_back({family[i].ball, family[i].multiplicity, 1, i});
  }
  return irs;
}

AtkKnnInstance RealizeAtkKnn(const GadgetParams& params) {
  params.Validate();
  const int n = params.graph.n;
  const double r = params.r;
  const double eps = params.eps();
  AtkKnnInstance inst;
  inst.train_label = inst.labels.Intern("+");
  inst.attack_label = inst.labels.Intern("-");
  inst.train = Dataset(n);
  inst.targets = Dataset(n);
  for (int i = 0; i < n; ++i) {
    Vector x(n, 0.0), t(n, 0.0);
    t[i] = r;
    x[i] = 2.0 * r;
    inst.targets.Add(std::move(t), inst.attack_label, 1);
    inst.train.Add(std::move(x), inst.train_label, 1);
  }
  for (auto [i, j] : params.graph.edges) {
    Vector x(n, 0.0), t(n, 0.0);
    t[i] = t[j] = -r;
    x[i] = x[j] = -(2.0 * r - eps);
    inst.targets.Add(std::move(t), inst.attack_label, n);
    inst.train.Add(std::move(x), inst.train_label, 1);
  }
  return inst;
}

Dataset ExtendK(const Dataset& train, const Dataset& targets, int k,
                ClassId train_label, ClassId target_label) {
  if (k < 1 || k % 2 == 0) throw InputError("k must be a positive odd integer");
  Dataset out = train;
  const int copies = (k - 1) / 2;
  if (copies == 0) return out;
  for (const LabeledPoint& t : targets) {
    out.Add(t.features, train_label, copies);
    out.Add(t.features, target_label, copies);
  }
  return out;
}

double CopySpacing(const GadgetParams& params) {
  // Every ball lies within l_p distance 2 * 2^{1/p} * r of the origin.
  return (4.0 * std::pow(2.0, 1.0 / params.p) + 1.0) * params.r;
}

std::pair<Dataset, Dataset> ExtendB(const Dataset& train,
                                    const Dataset& targets, int b,
                                    double spacing) {
  if (b < 1) throw InputError("b must be >= 1");
  Dataset out_train(train.dim()), out_targets(targets.dim());
  for (int copy = 0; copy < b; ++copy) {
    const double shift = copy * spacing;
    for (const LabeledPoint& p : train) {
      LabeledPoint q = p;
      if (!q.features.empty()) q.features[0] += shift;
      out_train.Add(std::move(q));
    }
    for (const LabeledPoint& p : targets) {
      LabeledPoint q = p;
      if (!q.features.empty()) q.features[0] += shift;
      out_targets.Add(std::move(q));
    }
  }
  return {std::move(out_train), std::move(out_targets)};
}

}  // namespace knnpoison
