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

#include "structview/cost_model.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "json.hpp"
#include "structview/status.h"

namespace structview {
namespace {

// Default scenario by hand: per doc 10000 + 1500 + 500 = 12000 tokens, per
// snippet call 250 + 1500 + 500 = 2250, per attribute (10 + 10) * 2250.
TEST(CostModelTest, DefaultScenario) {
  const CostScenario s;
  EXPECT_DOUBLE_EQ(CostDirect(s), 1.2e8);
  EXPECT_DOUBLE_EQ(CostCode(s), 10 * 12000.0 + 10 * 45000.0);
  EXPECT_DOUBLE_EQ(CrossoverDocs(s), 47.5);
  EXPECT_DOUBLE_EQ(CrossoverAttrs(s), 2664.0);
}

TEST(CostModelTest, CrossoversBalanceTheCosts) {
  CostScenario s;
  s.n_docs = CrossoverDocs(s);
  EXPECT_NEAR(CostDirect(s), CostCode(s), 1e-6);
  s = CostScenario{};
  s.n_attributes = CrossoverAttrs(s);
  EXPECT_NEAR(CostDirect(s), CostCode(s), 1e-6);
}

TEST(CostModelTest, NoCrossoverIsInfinite) {
  CostScenario s;
  s.n_docs = 10;  // no more docs than the sample
  EXPECT_EQ(CrossoverAttrs(s), std::numeric_limits<double>::infinity());
}

TEST(CostModelTest, CodeCostIgnoresCorpusSize) {
  CostScenario a, b;
  b.n_docs = 1e6;
  EXPECT_DOUBLE_EQ(CostCode(a), CostCode(b));
  EXPECT_GT(CostDirect(b), CostDirect(a));
}

TEST(CostModelTest, Validation) {
  CostScenario s;
  s.tokens_per_doc = 0;
  EXPECT_THROW(ValidateScenario(s), Error);
  s = CostScenario{};
  s.candidates_per_attribute = -1;
  EXPECT_THROW(MakeCostReport(s), Error);
  EXPECT_NO_THROW(ValidateScenario(CostScenario{}));
}

TEST(CostModelTest, Report) {
  const CostReport r = MakeCostReport(CostScenario{});
  EXPECT_NEAR(r.ratio, 1.2e8 / 570000.0, 1e-9);
  const auto j = nlohmann::json::parse(CostReportJson(r));
  EXPECT_DOUBLE_EQ(j["crossover_docs"].get<double>(), 47.5);
  EXPECT_FALSE(CostReportText(r).empty());

  CostScenario s;
  s.n_docs = 10;
  const auto inf = nlohmann::json::parse(CostReportJson(MakeCostReport(s)));
  EXPECT_EQ(inf["crossover_attrs"], "inf");
}

}  // namespace
}  // namespace structview
