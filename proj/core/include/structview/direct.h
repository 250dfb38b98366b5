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

#ifndef STRUCTVIEW_DIRECT_H_
#define STRUCTVIEW_DIRECT_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structview/corpus.h"
#include "structview/gateway.h"
#include "structview/schema.h"
#include "structview/status.h"

namespace structview {

struct AttributeValue {
  std::string attribute;
  std::string value;

  bool operator==(const AttributeValue &) const = default;
};

// Parses "- <attribute>: <value>" lines. The attribute is everything before
// the first colon, normalized; the value is trimmed and never split. Lines
// that do not match, or carry an empty value, are ignored.
std::vector<AttributeValue> DeserializePairs(std::string_view completion);

// Same grammar, but the attribute keeps its original spelling (trimmed).
std::vector<AttributeValue> DeserializeRawPairs(std::string_view completion);

struct DirectRecord {
  std::string doc_id;
  std::vector<AttributeValue> pairs;  // first occurrence of each attribute

  const std::string *Find(std::string_view attribute) const;
};

// Appends `incoming` to `pairs`, skipping attributes already present.
void MergeFirstWins(std::vector<AttributeValue> &pairs,
                    const std::vector<AttributeValue> &incoming);

struct DirectOptions {
  size_t chunk_budget = kDefaultChunkBudget;
  size_t parallelism = 4;
};

struct DirectResult {
  Schema schema;                     // union of attributes by doc frequency
  std::vector<DirectRecord> records;  // one per document, corpus order
  size_t prompts = 0;
  // Set when a provider or fixture failure cut the run short; `records`
  // then holds the documents completed before the failure.
  std::optional<Error> failure;
};

DirectResult ExtractDirect(Gateway &gateway, const Corpus &corpus,
                           std::string_view topic,
                           const DirectOptions &options = {});

}  // namespace structview

#endif  // STRUCTVIEW_DIRECT_H_
