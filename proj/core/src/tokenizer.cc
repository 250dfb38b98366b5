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

#include "structview/tokenizer.h"

#include <cctype>

namespace structview {
namespace {

bool IsWordByte(unsigned char c) {
  return std::isalnum(c) != 0 || c == '_' || c >= 0x80;
}

bool IsSpaceByte(unsigned char c) { return std::isspace(c) != 0; }

}  // namespace

std::vector<TokenSpan> DefaultTokenizer::Split(std::string_view text) const {
  std::vector<TokenSpan> spans;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (IsSpaceByte(c)) {
      ++i;
    } else if (IsWordByte(c)) {
      size_t j = i + 1;
      while (j < n && IsWordByte(static_cast<unsigned char>(text[j]))) ++j;
      spans.push_back({i, j});
      i = j;
    } else {
      spans.push_back({i, i + 1});
      ++i;
    }
  }
  return spans;
}

size_t DefaultTokenizer::Count(std::string_view text) const {
  size_t count = 0;
  bool in_word = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsWordByte(c)) {
      if (!in_word) ++count;
      in_word = true;
    } else {
      in_word = false;
      if (!IsSpaceByte(c)) ++count;
    }
  }
  return count;
}

const Tokenizer &GetDefaultTokenizer() {
  static const DefaultTokenizer tokenizer;
  return tokenizer;
}

size_t CountTokens(std::string_view text) {
  return GetDefaultTokenizer().Count(text);
}

}  // namespace structview
