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

#include "structview/pattern.h"

#include <gtest/gtest.h>

namespace structview {
namespace {

using Values = std::vector<std::string>;

std::string RejectReason(const std::string &program) {
  try {
    PatternProgram::Parse(program);
  } catch (const PatternError &e) {
    return e.reason();
  }
  return "";
}

TEST(PatternTest, FirstMatchOfGroupOne) {
  const auto p = PatternProgram::Parse(R"pp({"pattern": "Monarch: (.*)"})pp");
  EXPECT_EQ(p.Apply("Capital: Ottawa\nMonarch: Charles III\nMonarch: X"),
            Values{"Charles III"});
  EXPECT_TRUE(p.Apply("no monarch here").empty());
}

TEST(PatternTest, AllMatchesAndFlags) {
  const auto p = PatternProgram::Parse(
      R"pp({"pattern": "^code: (\\w+)$", "all": true, "flags": "im"})pp");
  EXPECT_EQ(p.Apply("Code: ab\nx\nCODE: cd"), (Values{"ab", "cd"}));
}

TEST(PatternTest, PostSteps) {
  const auto p = PatternProgram::Parse(R"pp({
    "pattern": "<td>(.*?)</td>",
    "post": ["strip_tags", "unescape_html", {"split": ";"},
             {"replace": ["Inc.", "Inc"]}, "lower", "collapse_ws"]})pp");
  EXPECT_EQ(p.Apply("<td><b>Acme  Inc.</b> ; B&amp;B ;  </td>"),
            (Values{"acme inc", "b&b"}));
  const auto whole = PatternProgram::Parse(R"pp({"pattern": "x+", "group": 0})pp");
  EXPECT_EQ(whole.Apply("aaxxx"), Values{"xxx"});
}

TEST(PatternTest, RejectReasons) {
  EXPECT_EQ(RejectReason("[1]"), "syntax");
  EXPECT_EQ(RejectReason("not json"), "syntax");
  EXPECT_EQ(RejectReason(R"pp({"regex": "a"})pp"), "no-entrypoint");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "(a"})pp"), "syntax");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "(a)", "group": 2})pp"), "bad-group");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "a", "group": -1})pp"), "syntax");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "a", "flags": "z"})pp"), "syntax");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "(a)", "post": ["shout"]})pp"), "syntax");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "(a)", "post": "trim"})pp"), "syntax");
  EXPECT_EQ(RejectReason(R"pp({"pattern": "(a)", "post": ["trim"]})pp"), "");
}

TEST(PatternTest, LooksLikePatternProgram) {
  EXPECT_TRUE(LooksLikePatternProgram(R"pp(  {"pattern": "a"} )pp"));
  EXPECT_FALSE(LooksLikePatternProgram(R"pp({"regex": "a"})pp"));
  EXPECT_FALSE(LooksLikePatternProgram("def f(text):"));
}

}  // namespace
}  // namespace structview
