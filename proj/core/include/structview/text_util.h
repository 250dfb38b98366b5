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

#ifndef STRUCTVIEW_TEXT_UTIL_H_
#define STRUCTVIEW_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace structview {

std::string ToLower(std::string_view text);

// Strips leading and trailing ASCII whitespace.
std::string_view Trim(std::string_view text);

// Replaces each run of whitespace with one space and trims the ends.
std::string CollapseWhitespace(std::string_view text);

// Merge key for attribute names: lowercase, trimmed, inner whitespace
// collapsed, trailing colons removed.
std::string NormalizeAttribute(std::string_view name);

// Lowercased and whitespace-collapsed; used for value comparisons.
std::string NormalizeValue(std::string_view value);

// Case-insensitive (ASCII) substring test. Returns npos when absent.
size_t FindCaseInsensitive(std::string_view haystack, std::string_view needle,
                           size_t from = 0);
bool ContainsCaseInsensitive(std::string_view haystack,
                             std::string_view needle);

// Returns a copy of `text` in which every malformed UTF-8 sequence is
// replaced by U+FFFD. `replaced` receives the number of substitutions.
std::string SanitizeUtf8(std::string_view text, size_t *replaced = nullptr);

// Moves `pos` backwards (or forwards) until it no longer points into the
// middle of a UTF-8 sequence.
size_t Utf8FloorBoundary(std::string_view text, size_t pos);
size_t Utf8CeilBoundary(std::string_view text, size_t pos);

std::vector<std::string> SplitLines(std::string_view text);

bool StartsWith(std::string_view text, std::string_view prefix);
bool EndsWith(std::string_view text, std::string_view suffix);

}  // namespace structview

#endif  // STRUCTVIEW_TEXT_UTIL_H_
