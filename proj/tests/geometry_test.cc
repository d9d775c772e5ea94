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

#include "knnpoison/geometry.h"

#include <gtest/gtest.h>

#include <cmath>

#include "knnpoison/errors.h"
#include "knnpoison/gadgets.h"

namespace knnpoison {
namespace {

TEST(DistanceTest, Examples) {
  EXPECT_DOUBLE_EQ(Distance(Vector{0, 0}, Vector{3, 4}, NormSpec::L2()), 5.0);
  EXPECT_DOUBLE_EQ(Distance(Vector{1, 7}, Vector{1, 7}, NormSpec::LInf()), 0.0);
  EXPECT_DOUBLE_EQ(Distance(Vector{1, -2}, Vector{4, 2}, NormSpec::LInf()), 4.0);
  EXPECT_NEAR(Distance(Vector{0, 0}, Vector{1, 1}, NormSpec::Lp(3)),
              std::cbrt(2.0), 1e-12);
}

TEST(DistanceTest, DimensionMismatchThrows) {
  EXPECT_THROW(Distance(Vector{0}, Vector{1, 2}, NormSpec::L2()), InputError);
}

TEST(NormSpecTest, ParseAndPrint) {
  EXPECT_EQ(NormSpec::Parse("l2"), NormSpec::L2());
  EXPECT_EQ(NormSpec::Parse("linf"), NormSpec::LInf());
  EXPECT_DOUBLE_EQ(NormSpec::Parse("lp:3.5").p(), 3.5);
  EXPECT_EQ(NormSpec::Parse(NormSpec::L2().ToString()), NormSpec::L2());
  EXPECT_EQ(NormSpec::Parse(NormSpec::LInf().ToString()), NormSpec::LInf());
  EXPECT_THROW(NormSpec::Parse("l1"), InputError);
  EXPECT_THROW(NormSpec::Parse("bogus"), InputError);
  EXPECT_THROW(NormSpec::Lp(0.5), InputError);
}

TEST(PairwiseTest, OverlapAndTangency) {
  Ball a{{0, 0}, 1}, b{{1, 0}, 1}, c{{2, 0}, 1};
  EXPECT_TRUE(PairwiseIntersects(a, b, NormSpec::L2()));
  EXPECT_FALSE(PairwiseIntersects(a, c, NormSpec::L2()));
  EXPECT_TRUE(PairwiseIntersects(Ball{{0, 0}, 1}, Ball{{1.5, 1.5}, 1},
                                 NormSpec::LInf()));
  EXPECT_FALSE(PairwiseIntersects(Ball{{0, 0}, 1}, Ball{{2, 0.5}, 1},
                                  NormSpec::LInf()));
}

TEST(IntersectWitnessTest, TwoDisks) {
  std::vector<Ball> balls{{{0, 0}, 1}, {{1, 0}, 1}};
  FeasibilityResult r = IntersectWitness(balls, NormSpec::L2());
  ASSERT_TRUE(r.has_witness());
  EXPECT_LT(r.residual, 0.0);
  for (const Ball& b : balls) {
    EXPECT_LT(Distance(r.point, b.center, NormSpec::L2()), b.radius);
  }
}

TEST(IntersectWitnessTest, SingleBallIsCenter) {
  std::vector<Ball> balls{{{2, -1, 3}, 0.5}};
  for (NormSpec norm : {NormSpec::L2(), NormSpec::LInf()}) {
    FeasibilityResult r = IntersectWitness(balls, norm);
    ASSERT_TRUE(r.has_witness());
    EXPECT_EQ(r.point, balls[0].center);
    EXPECT_DOUBLE_EQ(r.residual, -0.5);
  }
}

TEST(IntersectWitnessTest, TangentDisksAreEmpty) {
  std::vector<Ball> balls{{{0, 0}, 1}, {{2, 0}, 1}};
  EXPECT_FALSE(IntersectWitness(balls, NormSpec::L2()).has_witness());
  EXPECT_FALSE(IntersectWitness(balls, NormSpec::LInf()).has_witness());
}

TEST(IntersectWitnessTest, GadgetTriplesAreEmpty) {
  GadgetParams params;
  params.graph = Graph{3, {{0, 1}, {1, 2}, {0, 2}}};
  auto family = Phi(params);
  int n = params.graph.n;
  for (size_t e = 0; e < params.graph.edges.size(); ++e) {
    auto [i, j] = params.graph.edges[e];
    std::vector<Ball> triple{family[i].ball, family[j].ball,
                             family[n + e].ball};
    EXPECT_TRUE(PairwiseIntersects(triple[0], triple[2], params.norm()));
    EXPECT_TRUE(PairwiseIntersects(triple[1], triple[2], params.norm()));
    EXPECT_TRUE(PairwiseIntersects(triple[0], triple[1], params.norm()));
    EXPECT_FALSE(IntersectWitness(triple, params.norm()).has_witness());
  }
}

TEST(IntersectWitnessTest, LInfBoxMidpoint) {
  std::vector<Ball> balls{{{0, 0}, 1}, {{1.5, 0.5}, 1}};
  FeasibilityResult r = IntersectWitness(balls, NormSpec::LInf());
  ASSERT_TRUE(r.has_witness());
  EXPECT_DOUBLE_EQ(r.point[0], 0.75);
  EXPECT_DOUBLE_EQ(r.point[1], 0.25);
}

TEST(IntersectWitnessTest, FiniteP) {
  std::vector<Ball> balls{{{0, 0}, 1}, {{1.2, 0}, 1}, {{0.6, 0.9}, 1}};
  FeasibilityResult r = IntersectWitness(balls, NormSpec::Lp(3));
  ASSERT_TRUE(r.has_witness());
  for (const Ball& b : balls) {
    EXPECT_LT(Distance(r.point, b.center, NormSpec::Lp(3)), b.radius);
  }
}

TEST(IntersectWitnessTest, RejectsBadInput) {
  EXPECT_THROW(IntersectWitness({}, NormSpec::L2()), InputError);
  std::vector<Ball> mixed{{{0, 0}, 1}, {{0}, 1}};
  EXPECT_THROW(IntersectWitness(mixed, NormSpec::L2()), InputError);
  std::vector<Ball> zero{{{0, 0}, 0}};
  EXPECT_THROW(IntersectWitness(zero, NormSpec::L2()), InputError);
}

}  // namespace
}  // namespace knnpoison
