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

#include "structview/corpus.h"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "structview/status.h"
#include "structview/tokenizer.h"
#include "test_util.h"

namespace structview {
namespace {

namespace fs = std::filesystem;

using testing::TempDir;

Document MakeDoc(std::string text) {
  Document d;
  d.id = "doc.txt";
  d.text = std::move(text);
  d.token_count = CountTokens(d.text);
  return d;
}

TEST(TokenizerTest, WordsAndPunctuation) {
  EXPECT_EQ(CountTokens("Monarch: Charles III"), 4u);
  EXPECT_EQ(CountTokens("<td>x</td>"), 8u);
  EXPECT_EQ(CountTokens("  \n "), 0u);
  EXPECT_EQ(CountTokens("caf\xc3\xa9 ok"), 2u);
}

TEST(CorpusTest, IngestIsRecursiveSortedAndFiltered) {
  TempDir dir;
  dir.Write("b.txt", "beta");
  dir.Write("a/z.html", "<p>zeta</p>");
  dir.Write("a/y.htm", "<p>y</p>");
  dir.Write("notes.md", "ignored");
  const Corpus all = Ingest(dir.path().string());
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all.at(0).id, "a/y.htm");
  EXPECT_EQ(all.at(1).id, "a/z.html");
  EXPECT_EQ(all.at(2).id, "b.txt");
  EXPECT_EQ(all.at(2).format, DocFormat::kTxt);
  EXPECT_EQ(all.at(1).token_count, 8u);
  EXPECT_NE(all.Find("b.txt"), nullptr);
  EXPECT_EQ(all.Find("missing"), nullptr);

  const Corpus html = Ingest(dir.path().string(), DocFormat::kHtml);
  EXPECT_EQ(html.size(), 2u);
}

TEST(CorpusTest, IngestErrors) {
  TempDir dir;
  dir.Write("x.md", "nothing usable");
  try {
    Ingest(dir.path().string());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
  try {
    Ingest((dir.path() / "nope").string());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(CorpusTest, IngestSanitizesInvalidUtf8) {
  TempDir dir;
  dir.Write("bad.txt", "ok\xff");
  const Corpus c = Ingest(dir.path().string());
  EXPECT_EQ(c.at(0).text, "ok\xEF\xBF\xBD");
}

// 2,500 lines of 10 tokens = 25,000 tokens. A 3,000-token budget fits 300
// whole lines per chunk, so ceil(2500 / 300) = 9 chunks.
TEST(ChunkTest, TwentyFiveThousandTokensMakeNineChunks) {
  std::string text;
  for (int i = 0; i < 2500; ++i) text += "w w w w w w w w w w\n";
  const Document doc = MakeDoc(text);
  ASSERT_EQ(doc.token_count, 25000u);
  const auto chunks = ChunkDocument(doc, 3000);
  ASSERT_EQ(chunks.size(), 9u);
  for (size_t i = 0; i + 1 < chunks.size(); ++i) {
    EXPECT_EQ(chunks[i].token_count, 3000u);
    EXPECT_EQ(chunks[i].index, i);
  }
  EXPECT_EQ(chunks.back().token_count, 1000u);
}

TEST(ChunkTest, ConcatenationReproducesTextAndRespectsBudget) {
  std::string text;
  for (int i = 0; i < 400; ++i) {
    text += std::string(i % 7, 'x') + " <b>" + std::to_string(i) + "</b>";
    text += i % 5 == 0 ? "\n" : " ";
  }
  text += std::string(500, 'y') + " z z z z";  // one long word then short ones
  const Document doc = MakeDoc(text);
  for (size_t budget : {64u, 100u, 333u, 5000u}) {
    std::string joined;
    for (const auto &c : ChunkDocument(doc, budget)) {
      EXPECT_LE(c.token_count, budget);
      EXPECT_GT(c.token_count, 0u);
      joined += c.text;
    }
    EXPECT_EQ(joined, text) << budget;
  }
}

TEST(ChunkTest, CutsAfterNewlineWhenPossible) {
  std::string text;
  for (int i = 0; i < 30; ++i) text += "a b c d e f g\n";  // 7 tokens a line
  const auto chunks = ChunkDocument(MakeDoc(text), 64);
  ASSERT_GT(chunks.size(), 1u);
  EXPECT_EQ(chunks[0].text.back(), '\n');
  EXPECT_EQ(chunks[0].token_count, 63u);  // 9 whole lines
}

TEST(ChunkTest, BudgetBelowMinimumIsRejected) {
  try {
    ChunkDocument(MakeDoc("x"), 10);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(KeywordSearchTest, FirstHitPerDocumentInCorpusOrder) {
  std::vector<Document> docs;
  for (int i = 0; i < 5; ++i) {
    Document d;
    d.id = "d" + std::to_string(i);
    d.text = i == 1 ? "nothing here"
                    : std::string(50, '.') + "MONARCH: King " +
                          std::to_string(i) + " monarch again";
    docs.push_back(d);
  }
  const Corpus corpus(std::move(docs));
  KeywordSearchOptions opts;
  opts.window = 10;
  opts.max_hits = 3;
  const auto hits = KeywordSearch(corpus, "Monarch", opts);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].doc_id, "d0");
  EXPECT_EQ(hits[1].doc_id, "d2");
  EXPECT_EQ(hits[2].doc_id, "d3");
  EXPECT_EQ(hits[0].attribute, "Monarch");
  // 10 chars before the hit, the 7-char keyword, 10 chars after.
  EXPECT_EQ(hits[0].text, "..........MONARCH: King 0 m");
}

TEST(KeywordSearchTest, WindowNeverSplitsUtf8) {
  Document d;
  d.id = "u";
  d.text = "\xc3\xa9\xc3\xa9key\xc3\xa9\xc3\xa9";
  const Corpus corpus({d});
  KeywordSearchOptions opts;
  opts.window = 3;
  const auto hits = KeywordSearch(corpus, "key", opts);
  ASSERT_EQ(hits.size(), 1u);
  // Byte offsets 1 and 10 fall inside characters; the window widens.
  EXPECT_EQ(hits[0].text, d.text);
}

}  // namespace
}  // namespace structview
