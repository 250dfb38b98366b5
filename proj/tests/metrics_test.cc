// Copyright 2026 The Structview Authors.
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

#include "structview/metrics.h"

#include <random>

#include <gtest/gtest.h>

#include "reference_metrics.h"
#include "structview/status.h"

namespace structview {
namespace {

TEST(PairF1Test, Examples) {
  const TupleSet gold = {{"d1", "a", "v"}};
  const auto same = PairF1(gold, gold);
  EXPECT_DOUBLE_EQ(same.f1, 1.0);
  const auto half = PairF1({{"d1", "a", "v"}, {"d1", "b", "w"}}, gold);
  EXPECT_DOUBLE_EQ(half.precision, 0.5);
  EXPECT_DOUBLE_EQ(half.recall, 1.0);
  EXPECT_NEAR(half.f1, 0.6667, 1e-4);
  EXPECT_DOUBLE_EQ(PairF1({{"d2", "a", "v"}}, gold).f1, 0.0);
  const auto empty = PairF1({}, gold);
  EXPECT_DOUBLE_EQ(empty.precision, 0.0);
  EXPECT_DOUBLE_EQ(empty.f1, 0.0);
  EXPECT_THROW(PairF1(gold, {}), Error);
}

TEST(PairF1Test, NormalizesNamesAndValues) {
  EXPECT_DOUBLE_EQ(
      PairF1({{"d1", " Decision  Date:", "JAN  2, 2020"}},
             {{"d1", "decision date", "jan 2, 2020"}})
          .f1,
      1.0);
}

TEST(PairF1Test, MatchesReferenceImplementation) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 1000; ++i) {
    const auto pred = testing::RandomTuples(rng);
    auto gold = testing::RandomTuples(rng);
    if (gold.empty()) gold.push_back({"d0", "Monarch", "Charles III"});
    TupleSet p, g;
    for (const auto &t : pred) p.insert({t.doc, t.attr, t.value});
    for (const auto &t : gold) g.insert({t.doc, t.attr, t.value});
    const auto got = PairF1(p, g);
    const auto want = testing::RefPairF1(pred, gold);
    ASSERT_NEAR(got.precision, want[0], 1e-12) << i;
    ASSERT_NEAR(got.recall, want[1], 1e-12) << i;
    ASSERT_NEAR(got.f1, want[2], 1e-12) << i;
  }
}

TEST(TextF1Test, Examples) {
  EXPECT_DOUBLE_EQ(TextF1("Charles III", "Charles III"), 1.0);
  EXPECT_NEAR(TextF1("aspirin, ibuprofen", "aspirin"), 0.6667, 1e-4);
  EXPECT_DOUBLE_EQ(TextF1("", "x"), 0.0);
  EXPECT_DOUBLE_EQ(TextF1("x", ""), 0.0);
  EXPECT_DOUBLE_EQ(TextF1("", ""), 1.0);
  // Articles and punctuation alone normalize to empty.
  EXPECT_DOUBLE_EQ(TextF1("The.", ""), 1.0);
  EXPECT_DOUBLE_EQ(TextF1("the Acme, Inc.", "acme inc"), 1.0);
  EXPECT_EQ(NormalizeAnswer("  The  Quick-Brown fox, an apple "),
            "quickbrown fox apple");
}

TEST(TextF1Test, MatchesReferenceImplementation) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::string p = testing::RandomAnswer(rng);
    const std::string g = testing::RandomAnswer(rng);
    ASSERT_NEAR(TextF1(p, g), testing::SquadF1(p, g), 1e-12)
        << "'" << p << "' vs '" << g << "'";
  }
}

TEST(TextF1Test, SymmetricAndBounded) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const std::string p = testing::RandomAnswer(rng);
    const std::string g = testing::RandomAnswer(rng);
    const double f = TextF1(p, g);
    EXPECT_DOUBLE_EQ(f, TextF1(g, p));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(F1AtKTest, Examples) {
  const std::vector<std::string> gold = {"a", "b", "c", "d"};
  EXPECT_DOUBLE_EQ(F1AtK({"d", "c", "b", "a", "x"}, gold, 4), 1.0);
  EXPECT_DOUBLE_EQ(F1AtK({"a", "b", "x", "y"}, gold, 4), 0.5);
  EXPECT_DOUBLE_EQ(F1AtK({"x", "y"}, gold, 4), 0.0);
  // k beyond the list uses all of it: P = 1, R = 0.5.
  EXPECT_NEAR(F1AtK({"A:", "b"}, gold, 10), 2.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace structview
