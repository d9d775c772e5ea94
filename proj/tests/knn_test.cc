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

#include <gtest/gtest.h>

#include <sstream>

#include "knnpoison/dataset.h"
#include "knnpoison/errors.h"

namespace knnpoison {
namespace {

class KnnTest : public ::testing::Test {
 protected:
  void SetUp() override {
    plus_ = labels_.Intern("+");
    minus_ = labels_.Intern("-");
  }
  LabelMap labels_;
  ClassId plus_ = 0, minus_ = 0;
  NormSpec l2_ = NormSpec::L2();
};

TEST_F(KnnTest, SingleClass) {
  Dataset d(1);
  d.Add({0.0}, minus_);
  d.Add({10.0}, minus_);
  EXPECT_EQ(Classify(Vector{4.0}, d, 1, l2_), minus_);
  d.Add({4.5}, plus_);
  EXPECT_EQ(Classify(Vector{4.0}, d, 1, l2_), plus_);
}

TEST_F(KnnTest, ThreeNeighborVote) {
  Dataset d(1);
  d.Add({1.0}, plus_);
  d.Add({-1.0}, minus_);
  d.Add({2.0}, minus_);
  EXPECT_EQ(Classify(Vector{0.0}, d, 3, l2_), minus_);
}

TEST_F(KnnTest, NeighborList) {
  Dataset d(1);
  d.Add({0.0}, minus_);
  d.Add({10.0}, minus_);
  auto nn = KnnNeighbors(Vector{4.0}, d, 2, l2_);
  ASSERT_EQ(nn.size(), 2u);
  EXPECT_EQ(nn[0].index, 0u);
  EXPECT_DOUBLE_EQ(nn[0].distance, 4.0);
  EXPECT_EQ(nn[1].index, 1u);
  EXPECT_DOUBLE_EQ(nn[1].distance, 6.0);
}

TEST_F(KnnTest, QueryAtTrainingPoint) {
  Dataset d(2);
  d.Add({1.0, 1.0}, plus_);
  d.Add({3.0, 1.0}, minus_);
  auto nn = KnnNeighbors(Vector{3.0, 1.0}, d, 1, l2_);
  EXPECT_EQ(nn[0].index, 1u);
  EXPECT_DOUBLE_EQ(nn[0].distance, 0.0);
}

TEST_F(KnnTest, MultiplicityFillsSlots) {
  Dataset d(1);
  d.Add({1.0}, plus_, 2);
  d.Add({3.0}, minus_);
  auto nn = KnnNeighbors(Vector{0.0}, d, 2, l2_);
  ASSERT_EQ(nn.size(), 2u);
  EXPECT_EQ(nn[0].index, 0u);
  EXPECT_EQ(nn[1].index, 0u);
}

TEST_F(KnnTest, TiesBreakByInsertionOrderThenClassId) {
  Dataset d(1);
  d.Add({-1.0}, minus_);
  d.Add({1.0}, plus_);
  // Equal distances: the earlier row wins the single slot.
  EXPECT_EQ(Classify(Vector{0.0}, d, 1, l2_), minus_);
  // One vote each: the smaller class id wins.
  EXPECT_EQ(Classify(Vector{0.0}, d, 2, l2_), plus_);
}

TEST_F(KnnTest, PluralityTies) {
  std::vector<ClassId> votes{2, 1, 2, 1};
  EXPECT_EQ(Plurality(votes), 1);
}

TEST_F(KnnTest, ZeroOneLoss) {
  Dataset d(1);
  d.Add({0.0}, minus_);
  d.Add({5.0}, plus_);
  d.Add({10.0}, minus_);
  EXPECT_DOUBLE_EQ(ZeroOneLoss(d, d, 1, l2_), 0.0);
  Dataset holdout(1);
  holdout.Add({4.0}, plus_);
  EXPECT_DOUBLE_EQ(ZeroOneLoss(holdout, d, 1, l2_), 0.0);
  holdout.Add({9.0}, plus_, 3);
  EXPECT_DOUBLE_EQ(ZeroOneLoss(holdout, d, 1, l2_), 0.75);
}

TEST_F(KnnTest, Errors) {
  Dataset d(1);
  EXPECT_THROW(Classify(Vector{0.0}, d, 1, l2_), InputError);
  d.Add({0.0}, minus_);
  EXPECT_THROW(Classify(Vector{0.0}, d, 0, l2_), InputError);
  EXPECT_THROW(Classify(Vector{0.0}, d, 2, l2_), InputError);
  EXPECT_THROW(Classify(Vector{0.0, 1.0}, d, 1, l2_), InputError);
}

TEST(DatasetTest, CsvRoundTrip) {
  LabelMap labels;
  std::istringstream in("f0,f1,label,mult\n0.1,2,-,1\n-3e-5,4.25,+,3\n");
  Dataset d = ReadDatasetCsv(in, labels);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_EQ(d.total_weight(), 4);
  EXPECT_EQ(labels.Name(d[1].label), "+");
  std::ostringstream out;
  WriteDatasetCsv(out, d, labels);
  LabelMap again;
  std::istringstream in2(out.str());
  Dataset d2 = ReadDatasetCsv(in2, again);
  ASSERT_EQ(d2.size(), 2u);
  for (size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(d2[i].features, d[i].features);
    EXPECT_EQ(d2[i].multiplicity, d[i].multiplicity);
    EXPECT_EQ(again.Name(d2[i].label), labels.Name(d[i].label));
  }
}

TEST(DatasetTest, CsvWithoutMultiplicity) {
  LabelMap labels;
  std::istringstream in("f0,label\n1.5,a\n2.5,b\n");
  Dataset d = ReadDatasetCsv(in, labels);
  EXPECT_EQ(d.total_weight(), 2);
}

TEST(DatasetTest, MalformedCsv) {
  for (const char* text : {"", "f0,label\n1.0\n", "f0,label\nx,a\n",
                           "f0,label,mult\n1,a,0\n", "g0,label\n1,a\n",
                           "f0,label\n1,a,7\n"}) {
    LabelMap labels;
    std::istringstream in(text);
    EXPECT_THROW(ReadDatasetCsv(in, labels), InputError) << text;
  }
}

TEST(DatasetTest, DimensionChecks) {
  Dataset d;
  d.Add({1.0, 2.0}, 0);
  EXPECT_THROW(d.Add({1.0}, 0), InputError);
  EXPECT_THROW(d.Add({1.0, 2.0}, 0, 0), InputError);
}

TEST(DatasetTest, FormatRealRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(FormatReal(v)), v);
  }
}

}  // namespace
}  // namespace knnpoison
