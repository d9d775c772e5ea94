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

#include "knnpoison/experiments.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "knnpoison/errors.h"
#include "knnpoison/knn.h"
#include "knnpoison/pca.h"

namespace knnpoison {
namespace {

TEST(GenSynthTest, DeterministicAndLabeled) {
  SynthInstance a = GenSynth(SynthFamily::kUniform, 8, 2, 10, 42);
  SynthInstance b = GenSynth(SynthFamily::kUniform, 8, 2, 10, 42);
  ASSERT_EQ(a.train.size(), 8u);
  ASSERT_EQ(a.targets.size(), 10u);
  for (size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train[i].features, b.train[i].features);
    EXPECT_EQ(a.train[i].label, a.y_minus);
    for (double v : a.train[i].features) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  for (const LabeledPoint& t : a.targets) EXPECT_EQ(t.label, a.y_plus);
  SynthInstance c = GenSynth(SynthFamily::kUniform, 8, 2, 10, 43);
  EXPECT_NE(a.train[0].features, c.train[0].features);
}

TEST(GenSynthTest, NormalMeanNearZero) {
  const int m = 400, d = 4, trials = 10;
  std::vector<double> sums(d, 0.0);
  for (int t = 0; t < trials; ++t) {
    SynthInstance inst = GenSynth(SynthFamily::kNormal, m, d, 1, t);
    for (const LabeledPoint& p : inst.train) {
      for (int j = 0; j < d; ++j) sums[j] += p.features[j];
    }
  }
  double n = static_cast<double>(m) * trials;
  for (double s : sums) EXPECT_LE(std::abs(s / n), 5.0 / std::sqrt(n));
}

TEST(FamilyTest, Names) {
  EXPECT_EQ(ParseFamily("Uniform"), SynthFamily::kUniform);
  EXPECT_EQ(ParseFamily(FamilyName(SynthFamily::kNormal)), SynthFamily::kNormal);
  EXPECT_THROW(ParseFamily("cauchy"), InputError);
}

TEST(MeanAndSemTest, Values) {
  auto [mean, sem] = MeanAndSem({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(mean, 2.5);
  EXPECT_NEAR(sem, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(MeanAndSem({7.0}).second, 0.0);
}

TEST(SynthGridTest, SmallGridIsDeterministicAcrossThreads) {
  SynthGridSpec spec;
  spec.families = {SynthFamily::kUniform, SynthFamily::kNormal};
  spec.m_list = {8};
  spec.d_list = {2, 4};
  spec.trials = 3;
  spec.seed = 9;
  spec.threads = 1;
  auto serial = RunSynthGrid(spec);
  spec.threads = 4;
  auto parallel = RunSynthGrid(spec);
  ASSERT_EQ(serial.size(), 4u);
  for (size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].mean_score, parallel[i].mean_score);
    EXPECT_EQ(serial[i].sem, parallel[i].sem);
    EXPECT_EQ(serial[i].completed, 3);
    EXPECT_GE(serial[i].mean_score, 1.0);
    EXPECT_LE(serial[i].mean_score, 10.0);
  }
}

TEST(PcaTest, FullRankRatioIsOne) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  Dataset data(3);
  for (int i = 0; i < 20; ++i) data.Add({n01(rng), 2 * n01(rng), n01(rng)}, 0);
  PcaModel model = PcaFit(data, 3);
  EXPECT_DOUBLE_EQ(model.explained_variance_ratio, 1.0);
  EXPECT_EQ(model.output_dim(), 3u);
  // The mean maps to the origin.
  Dataset mean_only(3);
  mean_only.Add(model.mean, 0);
  Dataset projected = PcaTransform(model, mean_only);
  for (double v : projected[0].features) {
    EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST(PcaTest, LineDirection) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  const double ux = 0.6, uy = 0.8;
  Dataset data(2);
  for (int i = 0; i < 100; ++i) {
    double t = 5.0 * n01(rng);
    data.Add({1.0 + t * ux + 1e-9 * n01(rng), -2.0 + t * uy + 1e-9 * n01(rng)},
             0);
  }
  PcaModel model = PcaFit(data, 1);
  double cos = std::abs(model.components[0][0] * ux + model.components[0][1] * uy);
  EXPECT_LT(std::acos(std::min(1.0, cos)), 1e-6);
  EXPECT_NEAR(model.explained_variance_ratio, 1.0, 1e-12);
  EXPECT_GT(model.components[0][1], 0.0);  // sign convention
}

TEST(PcaTest, Errors) {
  Dataset data(2);
  data.Add({0.0, 1.0}, 0);
  EXPECT_THROW(PcaFit(data, 1), InputError);
  data.Add({1.0, 1.0}, 0);
  EXPECT_THROW(PcaFit(data, 3), InputError);
  EXPECT_THROW(PcaFit(data, 0), InputError);
  PcaModel model = PcaFit(data, 1);
  Dataset wrong(3);
  wrong.Add({0.0, 0.0, 0.0}, 0);
  EXPECT_THROW(PcaTransform(model, wrong), InputError);
}

TEST(TwoClassTest, TargetsAreMisclassified) {
  TwoClassSpec spec;
  spec.d = 8;
  spec.per_class = 50;
  spec.holdout_per_class = 10;
  spec.n_targets = 5;
  TwoClassInstance inst = GenTwoClass(spec);
  EXPECT_EQ(inst.train.size(), 100u);
  EXPECT_EQ(inst.holdout.size(), 20u);
  ASSERT_EQ(inst.targets.size(), 5u);
  for (const LabeledPoint& t : inst.targets) {
    EXPECT_EQ(t.label, inst.y_plus);
    EXPECT_NE(Classify(t.features, inst.train, 1, NormSpec::L2()), inst.y_plus);
  }
}

TEST(DefenseTest, RowsAndOriginalVarE) {
  TwoClassSpec gen;
  gen.d = 6;
  gen.per_class = 30;
  gen.holdout_per_class = 10;
  gen.n_targets = 4;
  TwoClassInstance inst = GenTwoClass(gen);
  DefenseSpec spec;
  spec.d_primes = {2, 6};
  spec.budgets = {1, 2};
  spec.y_plus = inst.y_plus;
  spec.calls_per_search = 200;
  auto rows = RunDefense(inst.train, inst.targets, inst.holdout, spec);
  ASSERT_EQ(rows.size(), 4u);
  for (const DefenseRow& row : rows) {
    EXPECT_GE(row.score_fraction, 0.0);
    EXPECT_LE(row.score_fraction, 1.0);
    EXPECT_GE(row.holdout_loss, 0.0);
    EXPECT_LE(row.holdout_loss, 1.0);
  }
  EXPECT_TRUE(rows[2].original);
  EXPECT_DOUBLE_EQ(rows[2].var_explained, 1.0);
  EXPECT_LT(rows[0].var_explained, 1.0);
  EXPECT_EQ(rows[0].d_prime, 2);
  EXPECT_EQ(rows[1].budget, 2);
}

}  // namespace
}  // namespace knnpoison
