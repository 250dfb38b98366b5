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

#include "json.hpp"
#include "structview/text_util.h"

namespace structview {

using json = nlohmann::json;

namespace {

std::string StripTags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_tag = false;
  for (char c : s) {
    if (c == '<') {
      in_tag = true;
    } else if (c == '>' && in_tag) {
      in_tag = false;
      out.push_back(' ');
    } else if (!in_tag) {
      out.push_back(c);
    }
  }
  return CollapseWhitespace(out);
}

std::string UnescapeHtml(std::string_view s) {
  static const std::pair<std::string_view, std::string_view> kEntities[] = {
      {"&amp;", "&"},  {"&lt;", "<"},   {"&gt;", ">"},
      {"&quot;", "\""}, {"&#39;", "'"},  {"&nbsp;", " "},
      {"&mdash;", "\xE2\x80\x94"}, {"&ndash;", "\xE2\x80\x93"}};
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto &[entity, replacement] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out.append(replacement);
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out.push_back(s[i++]);
  }
  return out;
}

std::string ReplaceAll(std::string s, const std::string &from,
                       const std::string &to) {
  if (from.empty()) return s;
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

PatternProgram::Step ParseStep(const json &j) {
  using Kind = PatternProgram::Step::Kind;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "trim") return {Kind::kTrim, "", ""};
    if (name == "strip_tags") return {Kind::kStripTags, "", ""};
    if (name == "unescape_html") return {Kind::kUnescapeHtml, "", ""};
    if (name == "collapse_ws") return {Kind::kCollapseWhitespace, "", ""};
    if (name == "lower") return {Kind::kLower, "", ""};
    throw PatternError("syntax", "unknown post step '" + name + "'");
  }
  if (j.is_object() && j.size() == 1) {
    if (j.contains("split") && j["split"].is_string()) {
      return {Kind::kSplit, j["split"].get<std::string>(), ""};
    }
    if (j.contains("replace") && j["replace"].is_array() &&
        j["replace"].size() == 2 && j["replace"][0].is_string() &&
        j["replace"][1].is_string()) {
      return {Kind::kReplace, j["replace"][0].get<std::string>(),
              j["replace"][1].get<std::string>()};
    }
  }
  throw PatternError("syntax", "malformed post step " + j.dump());
}

}  // namespace

PatternProgram PatternProgram::Parse(std::string_view json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw PatternError("syntax", "pattern program is not a JSON object");
  }
  if (!j.contains("pattern") || !j["pattern"].is_string()) {
    throw PatternError("no-entrypoint", "pattern program has no \"pattern\"");
  }
  PatternProgram p;
  p.pattern_ = j["pattern"].get<std::string>();
  if (j.contains("group")) {
    if (!j["group"].is_number_integer() || j["group"].get<int>() < 0) {
      throw PatternError("syntax", "\"group\" must be a nonnegative integer");
    }
    p.group_ = j["group"].get<int>();
  }
  if (j.contains("all")) {
    if (!j["all"].is_boolean()) {
      throw PatternError("syntax", "\"all\" must be a boolean");
    }
    p.all_ = j["all"].get<bool>();
  }
  auto flags = std::regex::ECMAScript;
  if (j.contains("flags")) {
    if (!j["flags"].is_string()) {
      throw PatternError("syntax", "\"flags\" must be a string");
    }
    p.flags_ = j["flags"].get<std::string>();
    for (char f : p.flags_) {
      if (f == 'i') {
        flags |= std::regex::icase;
      } else if (f == 'm') {
        flags |= std::regex::multiline;
      } else {
        throw PatternError("syntax", std::string("unknown flag '") + f + "'");
      }
    }
  }
  try {
    p.regex_ = std::regex(p.pattern_, flags);
  } catch (const std::regex_error &e) {
    throw PatternError("syntax", std::string("bad regex: ") + e.what());
  }
  if (static_cast<size_t>(p.group_) > p.regex_.mark_count()) {
    throw PatternError("bad-group", "group " + std::to_string(p.group_) +
                                        " exceeds capture count");
  }
  if (j.contains("post")) {
    if (!j["post"].is_array()) {
      throw PatternError("syntax", "\"post\" must be an array");
    }
    for (const auto &step : j["post"]) p.post_.push_back(ParseStep(step));
  }
  return p;
}

std::vector<std::string> PatternProgram::Apply(std::string_view text) const {
  std::vector<std::string> raw;
  using It = std::string_view::const_iterator;
  std::regex_iterator<It> it(text.begin(), text.end(), regex_), end;
  for (; it != end; ++it) {
    const auto &m = (*it)[group_];
    if (m.matched) raw.emplace_back(m.first, m.second);
    if (!all_) break;
  }

  std::vector<std::string> values = std::move(raw);
  for (const Step &step : post_) {
    std::vector<std::string> next;
    for (auto &v : values) {
      switch (step.kind) {
        case Step::Kind::kTrim:
          next.emplace_back(Trim(v));
          break;
        case Step::Kind::kStripTags:
          next.push_back(StripTags(v));
          break;
        case Step::Kind::kUnescapeHtml:
          next.push_back(UnescapeHtml(v));
          break;
        case Step::Kind::kCollapseWhitespace:
          next.push_back(CollapseWhitespace(v));
          break;
        case Step::Kind::kLower:
          next.push_back(ToLower(v));
          break;
        case Step::Kind::kReplace:
          next.push_back(ReplaceAll(v, step.arg, step.arg2));
          break;
        case Step::Kind::kSplit: {
          size_t start = 0;
          while (true) {
            const size_t at = step.arg.empty() ? std::string::npos
                                               : v.find(step.arg, start);
            next.emplace_back(Trim(std::string_view(v).substr(
                start, at == std::string::npos ? std::string::npos
                                               : at - start)));
            if (at == std::string::npos) break;
            start = at + step.arg.size();
          }
          break;
        }
      }
    }
    values = std::move(next);
  }
  std::vector<std::string> out;
  for (auto &v : values) {
    std::string t(Trim(v));
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

bool LooksLikePatternProgram(std::string_view text) {
  json j = json::parse(Trim(text), nullptr, false);
  return !j.is_discarded() && j.is_object() && j.contains("pattern");
}

}  // namespace structview
