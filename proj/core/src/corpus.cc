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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {

namespace fs = std::filesystem;

const char *DocFormatName(DocFormat format) {
  return format == DocFormat::kHtml ? "html" : "txt";
}

std::optional<DocFormat> ParseDocFormat(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "html" || lower == "htm") return DocFormat::kHtml;
  if (lower == "txt" || lower == "text") return DocFormat::kTxt;
  return std::nullopt;
}

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {}

const Document *Corpus::Find(std::string_view id) const {
  auto it = std::lower_bound(
      documents_.begin(), documents_.end(), id,
      [](const Document &d, std::string_view key) { return d.id < key; });
  if (it != documents_.end() && it->id == id) return &*it;
  // Corpora assembled by hand need not be sorted.
  for (const auto &d : documents_) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

namespace {

std::optional<DocFormat> FormatFromExtension(const fs::path &p) {
  std::string ext = ToLower(p.extension().string());
  if (ext == ".html" || ext == ".htm") return DocFormat::kHtml;
  if (ext == ".txt") return DocFormat::kTxt;
  return std::nullopt;
}

std::string ReadFile(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read " + p.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Corpus Ingest(const std::string &path, std::optional<DocFormat> format_filter,
              const Tokenizer &tokenizer) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw Error(ErrorCode::kIo, "unreadable path: " + path);
  }
  std::vector<Document> docs;
  fs::recursive_directory_iterator it(path, ec), end;
  if (ec) throw Error(ErrorCode::kIo, "unreadable path: " + path);
  for (; it != end; it.increment(ec)) {
    if (ec) throw Error(ErrorCode::kIo, "error walking " + path);
    if (!it->is_regular_file()) continue;
    auto format = FormatFromExtension(it->path());
    if (!format) continue;
    if (format_filter && *format != *format_filter) continue;

    Document doc;
    doc.id = fs::relative(it->path(), path).generic_string();
    doc.format = *format;
    size_t replaced = 0;
    doc.text = SanitizeUtf8(ReadFile(it->path()), &replaced);
    if (replaced > 0) {
      spdlog::warn("{}: replaced {} malformed UTF-8 sequence(s)", doc.id,
                   replaced);
    }
    doc.token_count = tokenizer.Count(doc.text);
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "empty corpus: " + path);
  }
  std::sort(docs.begin(), docs.end(),
            [](const Document &a, const Document &b) { return a.id < b.id; });
  return Corpus(std::move(docs));
}

std::vector<Chunk> ChunkDocument(const Document &doc, size_t budget,
                                 const Tokenizer &tokenizer) {
  if (budget < kMinChunkBudget) {
    throw Error(ErrorCode::kInvalidArgument,
                "chunk budget must be at least " +
                    std::to_string(kMinChunkBudget));
  }
  const std::string_view text = doc.text;
  const std::vector<TokenSpan> spans = tokenizer.Split(text);

  std::vector<Chunk> chunks;
  auto emit = [&](size_t begin, size_t end) {
    Chunk c;
    c.doc_id = doc.id;
    c.index = chunks.size();
    c.text = std::string(text.substr(begin, end - begin));
    c.token_count = tokenizer.Count(c.text);
    chunks.push_back(std::move(c));
  };

  size_t pos = 0;  // byte offset where the next chunk starts
  size_t tok = 0;  // first token not yet emitted
  while (spans.size() - tok > budget) {
    // Bytes [pos, limit) hold exactly `budget` tokens.
    const size_t limit = spans[tok + budget].begin;
    const size_t first_end = spans[tok].end;
    size_t cut = limit;
    const size_t nl = text.substr(0, limit).rfind('\n');
    if (nl != std::string_view::npos && nl >= first_end) cut = nl + 1;
    emit(pos, cut);
    pos = cut;
    while (tok < spans.size() && spans[tok].begin < cut) ++tok;
  }
  emit(pos, text.size());
  return chunks;
}

std::vector<Snippet> KeywordSearch(const Corpus &corpus,
                                   std::string_view attribute,
                                   const KeywordSearchOptions &options) {
  if (Trim(attribute).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty search attribute");
  }
  std::vector<Snippet> hits;
  for (const auto &doc : corpus.documents()) {
    if (hits.size() >= options.max_hits) break;
    const std::string_view text = doc.text;
    const size_t at = FindCaseInsensitive(text, attribute);
    if (at == std::string_view::npos) continue;
    size_t begin = at > options.window ? at - options.window : 0;
    size_t end = std::min(text.size(), at + attribute.size() + options.window);
    begin = Utf8FloorBoundary(text, begin);
    end = Utf8CeilBoundary(text, end);
    hits.push_back({doc.id, std::string(attribute),
                    std::string(text.substr(begin, end - begin))});
  }
  return hits;
}

}  // namespace structview
