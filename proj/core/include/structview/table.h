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

#ifndef STRUCTVIEW_TABLE_H_
#define STRUCTVIEW_TABLE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace structview {

// Provenance strings: "direct", "oracle", or a candidate function id. Cells
// that received no prediction at all have an empty provenance.
inline constexpr std::string_view kProvenanceDirect = "direct";
inline constexpr std::string_view kProvenanceOracle = "oracle";

struct Cell {
  std::string value;       // "" is an empty cell
  std::string provenance;

  bool operator==(const Cell &) const = default;
};

struct CellPrediction {
  std::string doc_id;
  std::string attribute;
  std::string value;
  std::string provenance;
};

struct Table {
  std::string topic;
  std::vector<std::string> attributes;  // schema rank order
  std::map<std::string, std::map<std::string, Cell>> rows;

  const Cell *Find(std::string_view doc_id, std::string_view attribute) const;

  bool operator==(const Table &) const = default;
};

// One row per document and one cell per attribute. Later predictions for the
// same cell overwrite earlier ones. Unknown documents or attributes throw
// kInvalidArgument.
Table Materialize(std::string topic, std::vector<std::string> attributes,
                  const std::vector<std::string> &doc_ids,
                  const std::vector<CellPrediction> &predictions);

std::string EmitCsv(const Table &table);
std::string EmitJsonl(const Table &table);

// Inverse of EmitJsonl. Throws kParse on malformed lines or cells whose
// attribute is not listed.
Table ParseJsonl(std::string_view text, std::vector<std::string> attributes,
                 std::string topic);

// Writes `contents` to `path`, throwing kIo on failure.
void WriteFile(const std::string &path, std::string_view contents);

}  // namespace structview

#endif  // STRUCTVIEW_TABLE_H_
