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

#include "knnpoison/oracle.h"

#include <gtest/gtest.h>

#include <random>

#include "knnpoison/errors.h"
#include "knnpoison/gadgets.h"
#include "knnpoison/search.h"
#include "testkit/testkit.h"

namespace knnpoison {
namespace {

LabeledBall Region(Vector c, double r, int value = 1, int cost = 1) {
  return LabeledBall{{std::move(c), r}, value, cost, 0};
}

TEST(BruteSingleTest, DisjointRegionsPickLargestValue) {
  std::vector<LabeledBall> irs{Region({0, 0}, 1, 2), Region({5, 0}, 1, 3),
                               Region({0, 5}, 1, 1)};
  for (NormSpec norm : {NormSpec::L2(), NormSpec::LInf()}) {
    SingleOracleResult r = BruteSingle(irs, 1, norm);
    EXPECT_EQ(r.best_tsi, 3);
    EXPECT_EQ(r.members, std::vector<size_t>{1});
  }
}

TEST(BruteSingleTest, GadgetK2) {
  GadgetParams params;
  params.graph = Graph{2, {{0, 1}}};
  params.epsilon = 0.5;
  SingleOracleResult r = BruteSingle(AsRegions(Phi(params)), 1, params.norm());
  EXPECT_EQ(r.best_tsi, 3);
}

TEST(BruteSingleTest, CostGating) {
  std::vector<LabeledBall> irs{Region({0}, 1, 1, 1), Region({0.5}, 1, 1, 2)};
  EXPECT_EQ(BruteSingle(irs, 1, NormSpec::L2()).best_tsi, 1);
  EXPECT_EQ(BruteSingle(irs, 2, NormSpec::L2()).best_tsi, 2);
}

TEST(BruteSingleTest, RandomLInfMatchesSearch) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<LabeledBall> irs;
    for (int i = 0; i < 8; ++i) {
      irs.push_back(Region({u(rng), u(rng)}, 0.1 + 0.3 * u(rng)));
    }
    SingleOracleResult oracle = BruteSingle(irs, 1, NormSpec::LInf());
    SearchOutcome search = Choppa(irs, {}, NormSpec::LInf());
    EXPECT_EQ(oracle.best_tsi, search.best_tsi) << "seed " << seed;
    ASSERT_TRUE(oracle.witness);
    EXPECT_EQ(Tsi(*oracle.witness, 1, irs, NormSpec::LInf()), oracle.best_tsi);
  }
}

TEST(BruteSingleTest, Limits) {
  std::vector<LabeledBall> irs;
  for (int i = 0; i < 15; ++i) irs.push_back(Region({double(i)}, 0.4));
  EXPECT_THROW(BruteSingle(irs, 1, NormSpec::L2()), LimitError);
  EXPECT_THROW(BruteSingle(irs, 1, NormSpec::Lp(3)), InputError);
  irs.resize(3);
  EXPECT_EQ(BruteSingle(irs, 1, NormSpec::L2()).best_tsi, 1);
}

TEST(BruteAttackTest, Examples) {
  testkit::Instance inst = testkit::ThreeTargets1D();
  NormSpec l2 = NormSpec::L2();
  EXPECT_EQ(BruteAttack(inst.train, inst.targets, inst.y_plus, 1, 0, l2), 0);
  EXPECT_EQ(BruteAttack(inst.train, inst.targets, inst.y_plus, 1, 1, l2), 3);
  testkit::Instance trap = testkit::CoverageTrap1D();
  EXPECT_EQ(BruteAttack(trap.train, trap.targets, trap.y_plus, 1, 1, l2), 4);
  EXPECT_EQ(BruteAttack(trap.train, trap.targets, trap.y_plus, 1, 2, l2), 6);
}

TEST(BruteAttackTest, CostGatingAtKThree) {
  LabelMap labels;
  ClassId plus = labels.Intern("+"), minus = labels.Intern("-");
  Dataset train(1), targets(1);
  for (double x : {1.0, 2.0, 3.0, 100.0}) train.Add({x}, minus);
  targets.Add({0.0}, plus);
  NormSpec l2 = NormSpec::L2();
  EXPECT_EQ(BruteAttack(train, targets, plus, 3, 1, l2), 0);
  EXPECT_EQ(BruteAttack(train, targets, plus, 3, 2, l2), 1);
}

TEST(BruteAttackTest, BudgetLimit) {
  testkit::Instance inst = testkit::ThreeTargets1D();
  EXPECT_THROW(BruteAttack(inst.train, inst.targets, inst.y_plus, 1, 5,
                           NormSpec::L2()),
               LimitError);
  EXPECT_THROW(BruteAttack(inst.train, inst.targets, inst.y_plus, 1, -1,
                           NormSpec::L2()),
               InputError);
}

TEST(BruteMisTest, Examples) {
  EXPECT_EQ(BruteMis(Graph{4, {}}), 4);
  EXPECT_EQ(BruteMis(testkit::CompleteGraph(3)), 1);
  EXPECT_EQ(BruteMis(testkit::CycleGraph(5)), 2);
  EXPECT_EQ(BruteMis(testkit::CycleGraph(6)), 3);
  EXPECT_THROW(BruteMis(Graph{19, {}}), LimitError);
}

}  // namespace
}  // namespace knnpoison
