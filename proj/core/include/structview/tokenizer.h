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

#ifndef STRUCTVIEW_TOKENIZER_H_
#define STRUCTVIEW_TOKENIZER_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace structview {

// Byte range [begin, end) of one token inside the tokenized text.
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;
};

// Token counting is pluggable so provider-exact tokenizers can be dropped
// in. Counts only need to be consistent across the pipeline.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  virtual std::vector<TokenSpan> Split(std::string_view text) const = 0;

  virtual size_t Count(std::string_view text) const {
    return Split(text).size();
  }
};

// Whitespace + punctuation splitter: every maximal run of word characters
// (ASCII alphanumerics, '_' and any byte >= 0x80) is one token, and every
// other non-space byte is a token on its own.
class DefaultTokenizer : public Tokenizer {
 public:
  std::vector<TokenSpan> Split(std::string_view text) const override;
  size_t Count(std::string_view text) const override;
};

const Tokenizer &GetDefaultTokenizer();

// Shorthand for GetDefaultTokenizer().Count(text).
size_t CountTokens(std::string_view text);

}  // namespace structview

#endif  // STRUCTVIEW_TOKENIZER_H_
