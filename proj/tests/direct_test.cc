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

#include "structview/direct.h"

#include <gtest/gtest.h>

#include "structview/tokenizer.h"
#include "test_util.h"

namespace structview {
namespace {

using V = std::vector<AttributeValue>;

TEST(DeserializeTest, Grammar) {
  EXPECT_EQ(DeserializePairs("- A: 1\n- B: 2"), (V{{"a", "1"}, {"b", "2"}}));
  EXPECT_TRUE(DeserializePairs("no attributes found").empty());
  EXPECT_EQ(DeserializePairs("- Provinces: a, b, c"),
            (V{{"provinces", "a, b, c"}}));
  EXPECT_EQ(DeserializePairs("\n- Monarch: Charles III\n- Governor General: "
                             "Mary Simon"),
            (V{{"monarch", "Charles III"}, {"governor general", "Mary Simon"}}));
  // First colon splits; empty values and malformed lines are skipped.
  EXPECT_EQ(DeserializePairs("- Time: 10:30\n- Empty:   \n-NoSpace: x\n"),
            (V{{"time", "10:30"}, {"nospace", "x"}}));
  EXPECT_EQ(DeserializeRawPairs("- Device Name: X"), (V{{"Device Name", "X"}}));
}

TEST(DeserializeTest, IsTotal) {
  for (const char *s : {"", "-", "- :", ":::", "- a:", "\xff\xfe", "- : v"}) {
    EXPECT_NO_THROW(DeserializePairs(s));
  }
}

TEST(MergeTest, FirstOccurrenceWins) {
  V pairs = {{"a", "chunk0"}};
  MergeFirstWins(pairs, {{"b", "x"}, {"a", "chunk2"}});
  EXPECT_EQ(pairs, (V{{"a", "chunk0"}, {"b", "x"}}));
}

using testing::MakeCorpus;

TEST(ExtractDirectTest, PromptsEveryChunkAndMergesInChunkOrder) {
  std::string long_doc;
  for (int i = 0; i < 60; ++i) long_doc += "line " + std::to_string(i) + "\n";
  const Corpus corpus = MakeCorpus({"Monarch: Charles III", long_doc});
  auto provider = std::make_shared<testing::FakeProvider>(
      [](const CompletionRequest &r) -> std::string {
        const std::string &chunk = r.bindings.at("chunk");
        if (chunk.find("Monarch") != std::string::npos) {
          return "- Monarch: Charles III\n- Governor General: Mary Simon";
        }
        // Every chunk of the long doc names "line" with its first line.
        return "- Line: " + chunk.substr(5, chunk.find('\n') - 5);
      });
  auto gw = testing::MakeFakeGateway(provider);
  DirectOptions opts;
  opts.chunk_budget = 64;
  const DirectResult r = ExtractDirect(*gw, corpus, "things", opts);

  size_t expected_prompts = 0;
  for (const auto &d : corpus.documents()) {
    expected_prompts += ChunkDocument(d, 64).size();
  }
  EXPECT_EQ(r.prompts, expected_prompts);
  EXPECT_EQ(provider->calls(TemplateId::kDirectExtract),
            static_cast<int>(expected_prompts));
  EXPECT_EQ(gw->ledger().calls(Phase::kDirect), expected_prompts);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].pairs.size(), 2u);
  ASSERT_NE(r.records[1].Find("line"), nullptr);
  EXPECT_EQ(*r.records[1].Find("line"), "0");
  EXPECT_FALSE(r.failure.has_value());
  ASSERT_EQ(r.schema.ranked.size(), 3u);
}

TEST(ExtractDirectTest, ProviderFailureKeepsPartialRecords) {
  const Corpus corpus = MakeCorpus({"a", "b", "c"});
  auto provider = std::make_shared<testing::FakeProvider>(
      [](const CompletionRequest &r) -> std::string {
        if (r.bindings.at("chunk") == "c") throw std::runtime_error("down");
        return "- X: " + r.bindings.at("chunk");
      });
  auto gw = testing::MakeFakeGateway(provider, 1);
  DirectOptions opts;
  opts.parallelism = 1;
  const DirectResult r = ExtractDirect(*gw, corpus, "t", opts);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->code(), ErrorCode::kProvider);
  EXPECT_EQ(r.records.size(), 2u);
}

}  // namespace
}  // namespace structview
