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

#ifndef STRUCTVIEW_PATTERN_H_
#define STRUCTVIEW_PATTERN_H_

#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace structview {

// Rejection raised while parsing a pattern program; reason() is one of
// "syntax", "no-entrypoint" or "bad-group".
class PatternError : public std::runtime_error {
 public:
  PatternError(std::string reason, const std::string &detail)
      : std::runtime_error(detail), reason_(std::move(reason)) {}
  const std::string &reason() const { return reason_; }

 private:
  std::string reason_;
};

// Native extractor: a regular expression plus a chain of post-processing
// steps, serialized as
//
//   {"pattern": "Monarch: (.*)", "group": 1, "all": false, "flags": "im",
//    "post": ["strip_tags", "trim", {"split": ","}]}
//
// "pattern" is the entry point. Flags: i (case-insensitive), m (multiline
// anchors). Post steps: trim, strip_tags, unescape_html, collapse_ws, lower,
// {"split": sep}, {"replace": [from, to]}.
class PatternProgram {
 public:
  struct Step {
    enum class Kind {
      kTrim,
      kStripTags,
      kUnescapeHtml,
      kCollapseWhitespace,
      kLower,
      kSplit,
      kReplace,
    };
    Kind kind;
    std::string arg;
    std::string arg2;
  };

  static PatternProgram Parse(std::string_view json_text);

  // Values extracted from `text`, in match order. Empty strings are dropped.
  std::vector<std::string> Apply(std::string_view text) const;

  const std::string &pattern() const { return pattern_; }
  int group() const { return group_; }

 private:
  std::string pattern_;
  std::string flags_;
  int group_ = 1;
  bool all_ = false;
  std::regex regex_;
  std::vector<Step> post_;
};

// True when `text` is a JSON object with a "pattern" member.
bool LooksLikePatternProgram(std::string_view text);

}  // namespace structview

#endif  // STRUCTVIEW_PATTERN_H_
