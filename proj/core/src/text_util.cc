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

#include "structview/text_util.h"

#include <algorithm>
#include <cctype>

namespace structview {
namespace {

bool IsSpace(unsigned char c) { return std::isspace(c) != 0; }

unsigned char LowerByte(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<unsigned char>(c + 32) : c;
}

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

// Length of the well-formed UTF-8 sequence starting at text[i], or 0.
size_t ValidSequenceLength(std::string_view text, size_t i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) return 1;
  size_t len;
  unsigned char lo = 0x80, hi = 0xBF;
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    len = 2;
  } else if (b0 >= 0xE0 && b0 <= 0xEF) {
    len = 3;
    if (b0 == 0xE0) lo = 0xA0;
    if (b0 == 0xED) hi = 0x9F;
  } else if (b0 >= 0xF0 && b0 <= 0xF4) {
    len = 4;
    if (b0 == 0xF0) lo = 0x90;
    if (b0 == 0xF4) hi = 0x8F;
  } else {
    return 0;
  }
  if (i + len > text.size()) return 0;
  const auto b1 = static_cast<unsigned char>(text[i + 1]);
  if (b1 < lo || b1 > hi) return 0;
  for (size_t k = 2; k < len; ++k) {
    if (!IsContinuation(static_cast<unsigned char>(text[i + k]))) return 0;
  }
  return len;
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (auto &c : out) c = static_cast<char>(LowerByte(c));
  return out;
}

std::string_view Trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && IsSpace(text[b])) ++b;
  while (e > b && IsSpace(text[e - 1])) --e;
  return text.substr(b, e - b);
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : Trim(text)) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string NormalizeAttribute(std::string_view name) {
  std::string out = ToLower(CollapseWhitespace(name));
  while (!out.empty() && (out.back() == ':' || IsSpace(out.back()))) {
    out.pop_back();
  }
  return out;
}

std::string NormalizeValue(std::string_view value) {
  return ToLower(CollapseWhitespace(value));
}

size_t FindCaseInsensitive(std::string_view haystack, std::string_view needle,
                           size_t from) {
  if (needle.empty()) return from <= haystack.size() ? from : std::string_view::npos;
  if (needle.size() > haystack.size()) return std::string_view::npos;
  auto it = std::search(
      haystack.begin() + static_cast<std::ptrdiff_t>(std::min(from, haystack.size())),
      haystack.end(), needle.begin(), needle.end(), [](char a, char b) {
        return LowerByte(a) == LowerByte(b);
      });
  if (it == haystack.end()) return std::string_view::npos;
  return static_cast<size_t>(it - haystack.begin());
}

bool ContainsCaseInsensitive(std::string_view haystack,
                             std::string_view needle) {
  return FindCaseInsensitive(haystack, needle) != std::string_view::npos;
}

std::string SanitizeUtf8(std::string_view text, size_t *replaced) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(text.size());
  size_t count = 0;
  size_t i = 0;
  while (i < text.size()) {
    size_t len = ValidSequenceLength(text, i);
    if (len == 0) {
      out.append(kReplacement);
      ++count;
      ++i;
      // Skip stray continuation bytes belonging to the broken sequence.
      while (i < text.size() &&
             IsContinuation(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      continue;
    }
    out.append(text.substr(i, len));
    i += len;
  }
  if (replaced != nullptr) *replaced = count;
  return out;
}

size_t Utf8FloorBoundary(std::string_view text, size_t pos) {
  pos = std::min(pos, text.size());
  while (pos > 0 && pos < text.size() &&
         IsContinuation(static_cast<unsigned char>(text[pos]))) {
    --pos;
  }
  return pos;
}

size_t Utf8CeilBoundary(std::string_view text, size_t pos) {
  while (pos < text.size() &&
         IsContinuation(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  return std::min(pos, text.size());
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() &&
         text.substr(text.size() - suffix.size()) == suffix;
}

}  // namespace structview
