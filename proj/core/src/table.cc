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

#include "structview/table.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"
#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {
namespace {

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const Cell *Table::Find(std::string_view doc_id,
                        std::string_view attribute) const {
  auto row = rows.find(std::string(doc_id));
  if (row == rows.end()) return nullptr;
  auto cell = row->second.find(std::string(attribute));
  return cell == row->second.end() ? nullptr : &cell->second;
}

Table Materialize(std::string topic, std::vector<std::string> attributes,
                  const std::vector<std::string> &doc_ids,
                  const std::vector<CellPrediction> &predictions) {
  Table t;
  t.topic = std::move(topic);
  t.attributes = std::move(attributes);
  const std::set<std::string> known(t.attributes.begin(), t.attributes.end());
  if (known.size() != t.attributes.size()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate table attribute");
  }
  for (const auto &doc : doc_ids) {
    auto &row = t.rows[doc];
    for (const auto &a : t.attributes) row[a];
  }
  for (const auto &p : predictions) {
    if (!known.count(p.attribute)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prediction for unknown attribute '" + p.attribute + "'");
    }
    auto row = t.rows.find(p.doc_id);
    if (row == t.rows.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prediction for unknown document '" + p.doc_id + "'");
    }
    row->second[p.attribute] = {p.value, p.provenance};
  }
  return t;
}

std::string EmitCsv(const Table &table) {
  std::string out = "doc_id";
  for (const auto &a : table.attributes) out += "," + CsvField(a);
  out += "\r\n";
  for (const auto &[doc, row] : table.rows) {
    out += CsvField(doc);
    for (const auto &a : table.attributes) {
      out += ',';
      auto it = row.find(a);
      if (it != row.end()) out += CsvField(it->second.value);
    }
    out += "\r\n";
  }
  return out;
}

std::string EmitJsonl(const Table &table) {
  std::string out;
  for (const auto &[doc, row] : table.rows) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
    for (const auto &a : table.attributes) {
      auto it = row.find(a);
      if (it == row.end()) continue;
      if (!it->second.value.empty()) values[a] = it->second.value;
      if (!it->second.provenance.empty()) {
        provenance[a] = it->second.provenance;
      }
    }
    nlohmann::ordered_json line;
    line["doc_id"] = doc;
    line["values"] = std::move(values);
    line["provenance"] = std::move(provenance);
    out += line.dump() + "\n";
  }
  return out;
}

Table ParseJsonl(std::string_view text, std::vector<std::string> attributes,
                 std::string topic) {
  Table t;
  t.topic = std::move(topic);
  t.attributes = std::move(attributes);
  const std::set<std::string> known(t.attributes.begin(), t.attributes.end());
  size_t lineno = 0;
  for (const auto &line : SplitLines(text)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kParse,
                  "table line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("doc_id") || !j["doc_id"].is_string()) {
      throw Error(ErrorCode::kParse,
                  "table line " + std::to_string(lineno) + ": missing doc_id");
    }
    auto &row = t.rows[j["doc_id"].get<std::string>()];
    for (const auto &a : t.attributes) row[a];
    for (const char *field : {"values", "provenance"}) {
      if (!j.contains(field)) continue;
      if (!j[field].is_object()) {
        throw Error(ErrorCode::kParse, std::string(field) + " is not an object");
      }
      for (const auto &[attr, v] : j[field].items()) {
        if (!known.count(attr)) {
          throw Error(ErrorCode::kParse, "unknown attribute '" + attr + "'");
        }
        if (!v.is_string()) {
          throw Error(ErrorCode::kParse, "non-string cell for '" + attr + "'");
        }
        Cell &c = row[attr];
        (field[0] == 'v' ? c.value : c.provenance) = v.get<std::string>();
      }
    }
  }
  return t;
}

void WriteFile(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace structview
