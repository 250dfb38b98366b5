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

#include <gtest/gtest.h>

namespace structview {
namespace {

TEST(TextUtilTest, NormalizeAttribute) {
  EXPECT_EQ(NormalizeAttribute("  Device   Name:: "), "device name");
  EXPECT_EQ(NormalizeAttribute("510(k) Number"), "510(k) number");
  EXPECT_EQ(NormalizeAttribute(":"), "");
}

TEST(TextUtilTest, NormalizeAttributeIsIdempotent) {
  for (const char *s : {"A  b:", " x\t y ", "Monarch", "a : b :"}) {
    const std::string once = NormalizeAttribute(s);
    EXPECT_EQ(NormalizeAttribute(once), once) << s;
  }
}

TEST(TextUtilTest, CaseInsensitiveFind) {
  EXPECT_EQ(FindCaseInsensitive("The MONARCH is", "monarch"), 4u);
  EXPECT_EQ(FindCaseInsensitive("abc", "d"), std::string::npos);
  EXPECT_TRUE(ContainsCaseInsensitive("Governor General", "GENERAL"));
}

TEST(TextUtilTest, SanitizeUtf8ReplacesBadBytes) {
  size_t n = 0;
  const std::string out = SanitizeUtf8("ok\xff" "fine\xc3", &n);
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(out, "ok\xEF\xBF\xBD" "fine\xEF\xBF\xBD");
  EXPECT_EQ(SanitizeUtf8("caf\xc3\xa9", &n), "caf\xc3\xa9");
  EXPECT_EQ(n, 0u);
}

TEST(TextUtilTest, Utf8Boundaries) {
  const std::string s = "a\xc3\xa9z";  // a é z
  EXPECT_EQ(Utf8FloorBoundary(s, 2), 1u);
  EXPECT_EQ(Utf8CeilBoundary(s, 2), 3u);
  EXPECT_EQ(Utf8FloorBoundary(s, 3), 3u);
}

TEST(TextUtilTest, CollapseAndTrim) {
  EXPECT_EQ(CollapseWhitespace("  a \n\t b  "), "a b");
  EXPECT_EQ(Trim("\n x \r\n"), "x");
  EXPECT_EQ(NormalizeValue(" Charles   III "), "charles iii");
}

}  // namespace
}  // namespace structview
