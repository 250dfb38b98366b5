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

#include <cctype>
#include <map>

#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {

PrecisionRecall PairF1(const TupleSet &pred, const TupleSet &gold) {
  if (gold.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "Pair F1 needs a gold set");
  }
  auto normalize = [](const TupleSet &in) {
    TupleSet out;
    for (const auto &t : in) {
      out.insert({t.doc_id, NormalizeAttribute(t.attribute),
                  NormalizeValue(t.value)});
    }
    return out;
  };
  const TupleSet p = normalize(pred);
  const TupleSet g = normalize(gold);
  if (p.empty()) return {};
  size_t hit = 0;
  for (const auto &t : p) hit += g.count(t);
  PrecisionRecall r;
  r.precision = static_cast<double>(hit) / static_cast<double>(p.size());
  r.recall = static_cast<double>(hit) / static_cast<double>(g.size());
  if (hit > 0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

namespace {

bool IsWordByte(unsigned char c) {
  return std::isalnum(c) != 0 || c == '_' || c >= 0x80;
}

bool IsArticle(std::string_view w) { return w == "a" || w == "an" || w == "the"; }

std::vector<std::string> AnswerTokens(std::string_view text) {
  std::vector<std::string> tokens;
  const std::string norm = NormalizeAnswer(text);
  size_t i = 0;
  while (i < norm.size()) {
    size_t j = norm.find(' ', i);
    if (j == std::string::npos) j = norm.size();
    if (j > i) tokens.emplace_back(norm.substr(i, j - i));
    i = j + 1;
  }
  return tokens;
}

}  // namespace

std::string NormalizeAnswer(std::string_view text) {
  std::string kept;
  kept.reserve(text.size());
  for (char ch : ToLower(text)) {
    if (!std::ispunct(static_cast<unsigned char>(ch))) kept.push_back(ch);
  }
  // Articles are whole runs of word characters.
  std::string spaced;
  spaced.reserve(kept.size());
  size_t i = 0;
  while (i < kept.size()) {
    if (!IsWordByte(static_cast<unsigned char>(kept[i]))) {
      spaced.push_back(kept[i++]);
      continue;
    }
    size_t j = i;
    while (j < kept.size() && IsWordByte(static_cast<unsigned char>(kept[j]))) {
      ++j;
    }
    const std::string_view word(kept.data() + i, j - i);
    if (IsArticle(word)) {
      spaced.push_back(' ');
    } else {
      spaced.append(word);
    }
    i = j;
  }
  return CollapseWhitespace(spaced);
}

double TextF1(std::string_view pred, std::string_view gold) {
  const auto p = AnswerTokens(pred);
  const auto g = AnswerTokens(gold);
  if (p.empty() || g.empty()) return p.empty() && g.empty() ? 1.0 : 0.0;
  std::map<std::string_view, long> counts;
  for (const auto &t : g) ++counts[t];
  long same = 0;
  for (const auto &t : p) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++same;
    }
  }
  if (same == 0) return 0.0;
  const double precision = static_cast<double>(same) / p.size();
  const double recall = static_cast<double>(same) / g.size();
  return 2.0 * precision * recall / (precision + recall);
}

double F1AtK(const std::vector<std::string> &pred_ranked,
             const std::vector<std::string> &gold, size_t k) {
  std::set<std::string> top, truth;
  for (size_t i = 0; i < pred_ranked.size() && i < k; ++i) {
    top.insert(NormalizeAttribute(pred_ranked[i]));
  }
  for (const auto &g : gold) truth.insert(NormalizeAttribute(g));
  if (top.empty() || truth.empty()) return 0.0;
  size_t hit = 0;
  for (const auto &t : top) hit += truth.count(t);
  if (hit == 0) return 0.0;
  const double precision = static_cast<double>(hit) / top.size();
  const double recall = static_cast<double>(hit) / truth.size();
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace structview
