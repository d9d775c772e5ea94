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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "knnpoison/errors.h"
#include "knnpoison/oracle.h"
#include "testkit/testkit.h"

namespace knnpoison {
namespace {

GadgetParams K2() {
  GadgetParams params;
  params.graph = Graph{2, {{0, 1}}};
  params.epsilon = 0.5;
  return params;
}

TEST(PhiTest, K2Balls) {
  auto family = Phi(K2());
  ASSERT_EQ(family.size(), 3u);
  EXPECT_EQ(family[0].ball.center, (Vector{9, 0}));
  EXPECT_EQ(family[1].ball.center, (Vector{0, 9}));
  EXPECT_EQ(family[2].ball.center, (Vector{-9, -9}));
  EXPECT_DOUBLE_EQ(family[0].ball.radius, 9.0);
  EXPECT_DOUBLE_EQ(family[1].ball.radius, 9.0);
  EXPECT_NEAR(family[2].ball.radius, std::sqrt(2.0) * 8.5, 1e-12);
  EXPECT_EQ(family[0].multiplicity, 1);
  EXPECT_EQ(family[2].multiplicity, 2);
}

TEST(PhiTest, EdgelessGraphIsOneClique) {
  GadgetParams params;
  params.graph = Graph{4, {}};
  auto irs = AsRegions(Phi(params));
  EXPECT_EQ(BruteSingle(irs, 1, params.norm()).best_tsi, 4);
}

TEST(PhiTest, EdgeTriplesAreDisjoint) {
  GadgetParams params;
  params.graph = testkit::CycleGraph(5);
  auto family = Phi(params);
  for (size_t e = 0; e < params.graph.edges.size(); ++e) {
    auto [i, j] = params.graph.edges[e];
    std::vector<Ball> triple{family[i].ball, family[j].ball,
                             family[params.graph.n + e].ball};
    EXPECT_FALSE(IntersectWitness(triple, params.norm()).has_witness());
  }
}

TEST(PhiTest, Validation) {
  GadgetParams params;
  params.graph = Graph{2, {{0, 0}}};
  EXPECT_THROW(params.Validate(), InputError);
  params.graph = Graph{2, {{0, 1}}};
  params.epsilon = 10.0;
  EXPECT_THROW(params.Validate(), InputError);
  params.epsilon.reset();
  params.r = -1;
  EXPECT_THROW(params.Validate(), InputError);
}

TEST(RealizeTest, K2Regions) {
  GadgetParams params = K2();
  AtkKnnInstance inst = RealizeAtkKnn(params);
  auto irs = ConstructIrs(inst.train, inst.targets, inst.attack_label, 1,
                          params.norm());
  auto family = Phi(params);
  ASSERT_EQ(irs.size(), family.size());
  for (size_t i = 0; i < irs.size(); ++i) {
    EXPECT_EQ(irs[i].ball.center, family[i].ball.center);
    EXPECT_NEAR(irs[i].ball.radius, family[i].ball.radius, 1e-9);
    EXPECT_EQ(irs[i].value, family[i].multiplicity);
    EXPECT_EQ(irs[i].cost, 1);
  }
}

TEST(ExtendKTest, KThreeKeepsRegions) {
  GadgetParams params;
  params.graph = testkit::CycleGraph(4);
  AtkKnnInstance inst = RealizeAtkKnn(params);
  Dataset train3 = ExtendK(inst.train, inst.targets, 3, inst.train_label,
                           inst.attack_label);
  EXPECT_EQ(train3.total_weight(),
            inst.train.total_weight() + 2 * static_cast<long>(inst.targets.size()));
  auto irs1 = ConstructIrs(inst.train, inst.targets, inst.attack_label, 1,
                           params.norm());
  auto irs3 = ConstructIrs(train3, inst.targets, inst.attack_label, 3,
                           params.norm());
  ASSERT_EQ(irs1.size(), irs3.size());
  for (size_t i = 0; i < irs1.size(); ++i) {
    EXPECT_EQ(irs1[i].ball.center, irs3[i].ball.center);
    EXPECT_EQ(irs1[i].ball.radius, irs3[i].ball.radius);
    EXPECT_EQ(irs1[i].cost, irs3[i].cost);
    EXPECT_EQ(irs1[i].value, irs3[i].value);
  }
  Dataset same = ExtendK(inst.train, inst.targets, 1, inst.train_label,
                         inst.attack_label);
  EXPECT_EQ(same.size(), inst.train.size());
  EXPECT_THROW(ExtendK(inst.train, inst.targets, 2, 0, 1), InputError);
}

TEST(ExtendBTest, CopiesDoNotInteract) {
  GadgetParams params = K2();
  AtkKnnInstance inst = RealizeAtkKnn(params);
  auto [train1, targets1] = ExtendB(inst.train, inst.targets, 1,
                                    CopySpacing(params));
  EXPECT_EQ(train1.size(), inst.train.size());
  auto [train2, targets2] = ExtendB(inst.train, inst.targets, 2,
                                    CopySpacing(params));
  EXPECT_EQ(targets2.size(), 2 * inst.targets.size());
  auto irs = ConstructIrs(train2, targets2, inst.attack_label, 1,
                          params.norm());
  size_t per = inst.targets.size();
  for (size_t a = 0; a < per; ++a) {
    for (size_t b = per; b < 2 * per; ++b) {
      EXPECT_FALSE(PairwiseIntersects(irs[a].ball, irs[b].ball, params.norm()));
    }
  }
  long one = BruteAttack(inst.train, inst.targets, inst.attack_label, 1, 1,
                         params.norm());
  long two = BruteAttack(train2, targets2, inst.attack_label, 1, 2,
                         params.norm());
  EXPECT_EQ(one, 3);
  EXPECT_EQ(two, 2 * one);
}

TEST(GraphTest, ReadEdgeList) {
  std::istringstream in("# triangle plus an isolated vertex\nn 4\n1 2\n2 3\n\n1 3\n");
  Graph g = ReadEdgeList(in);
  EXPECT_EQ(g.n, 4);
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.edges[0], (std::pair<int, int>{0, 1}));
  for (const char* bad : {"1 1\n", "1 x\n", "0 2\n", "1 2\n2 1\n", "n 1\n1 2\n"}) {
    std::istringstream b(bad);
    EXPECT_THROW(ReadEdgeList(b), InputError) << bad;
  }
}

}  // namespace
}  // namespace knnpoison
