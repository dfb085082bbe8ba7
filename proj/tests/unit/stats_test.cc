// Copyright 2026 The Cyclex Authors.
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

#include "cyclex/stats.h"

#include <gtest/gtest.h>

#include "cyclex/error.h"

namespace cyclex {
namespace {

TEST(QuantileTest, LinearInterpolation) {
  std::vector<double> v = {4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(Quantile(v, 0.0), 1);
  EXPECT_DOUBLE_EQ(Quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(Quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Quantile(v, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(Quantile(v, 1.0), 4);
}

TEST(SummarizeTest, OddSample) {
  std::vector<double> v = {0.2, 0.9, 0.4, 0.0, 1.0};
  Quartiles q = Summarize(v);
  EXPECT_DOUBLE_EQ(q.min, 0.0);
  EXPECT_DOUBLE_EQ(q.q1, 0.2);
  EXPECT_DOUBLE_EQ(q.median, 0.4);
  EXPECT_DOUBLE_EQ(q.q3, 0.9);
  EXPECT_DOUBLE_EQ(q.max, 1.0);
}

TEST(SummarizeTest, SingleValueAndEmpty) {
  std::vector<double> one = {0.5};
  Quartiles q = Summarize(one);
  EXPECT_EQ(q.min, 0.5);
  EXPECT_EQ(q.max, 0.5);
  EXPECT_THROW(Summarize(std::vector<double>{}), Error);
}

TEST(MeanTest, EmptyIsZero) {
  EXPECT_EQ(Mean(std::vector<double>{}), 0.0);
  EXPECT_DOUBLE_EQ(Mean(std::vector<double>{1, 2, 4}), 7.0 / 3);
}

TEST(FormatTest, ThreeDecimals) {
  EXPECT_EQ(FormatFixed3(0.5), "0.500");
  EXPECT_EQ(FormatFixed3(2.0 / 3), "0.667");
  EXPECT_EQ(FormatFixed3(-0.0001), "0.000");
  EXPECT_EQ(FormatFixed3(-12.5), "-12.500");
  EXPECT_DOUBLE_EQ(Round3(0.12345), 0.123);
}

}  // namespace
}  // namespace cyclex
