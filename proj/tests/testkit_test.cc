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

#include "testkit/testkit.h"

#include <gtest/gtest.h>

#include "knnpoison/influence.h"
#include "testkit/properties.h"

namespace knnpoison::testkit {
namespace {

TEST(GenInstanceTest, DeterministicAndInRange) {
  InstanceGen gen;
  gen.seed = 77;
  Instance a = GenInstance(gen), b = GenInstance(gen);
  ASSERT_EQ(a.train.size(), b.train.size());
  for (size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train[i].features, b.train[i].features);
  }
  for (uint64_t s = 0; s < 50; ++s) {
    gen.seed = s;
    Instance inst = GenInstance(gen);
    EXPECT_GE(inst.train.dim(), 1u);
    EXPECT_LE(inst.train.dim(), 3u);
    EXPECT_GE(inst.targets.size(), 4u);
    EXPECT_LE(inst.targets.size(), 12u);
  }
}

TEST(GenInstanceTest, OverlapRate) {
  int overlapping = 0;
  for (uint64_t s = 0; s < 200; ++s) {
    InstanceGen gen;
    gen.seed = s;
    Instance inst = GenInstance(gen);
    NormSpec norm = s % 2 ? NormSpec::LInf() : NormSpec::L2();
    auto irs = ConstructIrs(inst.train, inst.targets, inst.y_plus, inst.k, norm);
    overlapping += HasOverlap(irs, norm);
  }
  EXPECT_GE(overlapping, 60);
}

TEST(GraphsUpToIsoTest, Counts) {
  const size_t expected[] = {1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(GraphsUpToIso(n).size(), expected[n - 1]) << n;
  }
}

TEST(CheckIrsTest, DetectsCostOffByOne) {
  Instance inst = ThreeTargets1D();
  NormSpec l2 = NormSpec::L2();
  auto irs = ConstructIrs(inst.train, inst.targets, inst.y_plus, 1, l2);
  EXPECT_FALSE(CheckIrs(inst.train, inst.targets, inst.y_plus, 1, l2, irs));
  for (LabeledBall& ir : irs) ++ir.cost;
  EXPECT_TRUE(CheckIrs(inst.train, inst.targets, inst.y_plus, 1, l2, irs));
}

TEST(PropertiesTest, AllSuitesPass) {
  int total = 0;
  for (const PropertyResult& r : RunAllProperties(2026)) {
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
    total += r.cases;
  }
  EXPECT_GE(total, 500);
}

}  // namespace
}  // namespace knnpoison::testkit
