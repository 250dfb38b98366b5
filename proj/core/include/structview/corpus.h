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

#ifndef STRUCTVIEW_CORPUS_H_
#define STRUCTVIEW_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "structview/tokenizer.h"

namespace structview {

enum class DocFormat { kHtml, kTxt };

const char *DocFormatName(DocFormat format);
std::optional<DocFormat> ParseDocFormat(std::string_view name);

struct Document {
  std::string id;  // path relative to the lake root
  DocFormat format = DocFormat::kTxt;
  std::string text;
  size_t token_count = 0;
};

struct Chunk {
  std::string doc_id;
  size_t index = 0;
  std::string text;
  size_t token_count = 0;
};

// A window of text around one keyword hit.
struct Snippet {
  std::string doc_id;
  std::string attribute;
  std::string text;
};

// Immutable once built; safe to share across threads.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document> &documents() const { return documents_; }
  size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  const Document &at(size_t i) const { return documents_.at(i); }

  // Returns nullptr when no document has this id.
  const Document *Find(std::string_view id) const;

 private:
  std::vector<Document> documents_;
};

// Reads every .txt/.html/.htm file under `path` (recursively). Documents are
// ordered by relative path. Throws kIo for an unreadable path and
// kEmptyCorpus when nothing matches.
Corpus Ingest(const std::string &path,
              std::optional<DocFormat> format_filter = std::nullopt,
              const Tokenizer &tokenizer = GetDefaultTokenizer());

inline constexpr size_t kMinChunkBudget = 64;
inline constexpr size_t kDefaultChunkBudget = 3000;

// Splits a document into consecutive, non-overlapping chunks of at most
// `budget` tokens. Cuts land after the last newline that keeps the chunk
// within budget, falling back to a token boundary when a line is longer
// than the budget. Concatenating the chunks reproduces the text.
std::vector<Chunk> ChunkDocument(const Document &doc, size_t budget,
                                 const Tokenizer &tokenizer =
                                     GetDefaultTokenizer());

struct KeywordSearchOptions {
  size_t window = 1000;  // characters on each side of the hit
  size_t max_hits = 3;
};

// Case-insensitive search for `attribute`; at most one snippet per
// document (the first hit), in corpus order, capped at max_hits.
std::vector<Snippet> KeywordSearch(const Corpus &corpus,
                                   std::string_view attribute,
                                   const KeywordSearchOptions &options = {});

}  // namespace structview

#endif  // STRUCTVIEW_CORPUS_H_
