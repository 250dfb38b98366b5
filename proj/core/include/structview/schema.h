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

#ifndef STRUCTVIEW_SCHEMA_H_
#define STRUCTVIEW_SCHEMA_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "structview/corpus.h"
#include "structview/gateway.h"

namespace structview {

struct AttributeCandidate {
  std::string name;                    // normalized merge key
  std::vector<std::string> raw_names;  // observed spellings, sorted
  std::map<std::string, size_t> spelling_counts;
  size_t frequency = 0;                // sample documents mentioning it
  bool upweighted = false;
  double score = 0.0;
  std::optional<bool> validated;

  // Most common spelling; ties go to the lexicographically smallest.
  const std::string &display_name() const;
};

struct Schema {
  std::string topic;
  size_t k = 0;
  std::vector<AttributeCandidate> ranked;

  std::vector<std::string> names() const;
  const AttributeCandidate *Find(std::string_view name) const;
};

// Sorts by score descending, then name ascending.
void SortRanked(std::vector<AttributeCandidate> &ranked);

// Evenly spaced indices floor(i * n / k) for i < min(k, n).
std::vector<size_t> StrideSample(size_t n, size_t k);

struct RawPair {
  std::string attribute;  // as spelled in the completion
  std::string value;
};

// Provenance-filtered extractions for one sample document.
struct SampleExtraction {
  std::string doc_id;
  std::vector<RawPair> pairs;
};

// Drops pairs whose attribute name does not occur in `doc_text`
// (case-insensitive).
std::vector<RawPair> FilterByProvenance(const std::vector<RawPair> &pairs,
                                        std::string_view doc_text);

// Runs the open-extraction prompt over every chunk of every sample document
// and keeps attributes the document mentions verbatim.
std::vector<SampleExtraction> GenerateCandidates(
    Gateway &gateway, const std::vector<const Document *> &sample,
    std::string_view topic, size_t chunk_budget = kDefaultChunkBudget,
    size_t parallelism = 4);

struct RankOptions {
  double boost = 2.0;
  bool rerank = true;
};

// Frequency per normalized name over the sample, then one re-rank call over
// the union; names returned by the model get score = frequency * boost. A
// null gateway or an unusable completion leaves pure frequency order.
Schema RankCandidates(Gateway *gateway,
                      const std::vector<SampleExtraction> &extractions,
                      std::string_view topic, size_t k,
                      const RankOptions &options = {});

// Names listed in a re-rank completion, normalized. Accepts "- name",
// "* name", "1. name" and bare lines.
std::vector<std::string> ParseRerankCompletion(std::string_view completion);

inline constexpr size_t kValidationSampleSize = 5;

// Keep iff at least one value draws a completion beginning with "yes"
// (case-insensitive). Anything else counts as "no".
bool ValidateAttribute(Gateway &gateway, std::string_view attribute,
                       const std::vector<std::string> &sampled_values,
                       std::string_view topic);

bool IsAffirmative(std::string_view completion);

struct AtomicPair {
  std::string name;
  std::string value;
};

struct AtomizedValue {
  std::string doc_id;
  std::vector<AtomicPair> pairs;
};

struct AtomizationResult {
  std::string attribute;
  std::vector<AtomicPair> exemplar;  // from the big model
  std::vector<AtomizedValue> values;  // one per remaining value
};

// Parses a JSON list of [name, value] pairs; list values are joined with
// ", " and numbers are rendered as written. Returns nullopt when the text
// is not such a list.
std::optional<std::vector<AtomicPair>> ParseAtomicPairs(
    std::string_view completion);

struct AtomizeOptions {
  std::optional<std::string> big_model;
  std::optional<std::string> small_model;
};

// Decomposes one complex attribute: the big model splits the exemplar, then
// the small model extracts each atomic attribute from every remaining value.
// Returns nullopt (logged) when the exemplar completion is not a JSON list.
std::optional<AtomizationResult> Atomize(
    Gateway &gateway, std::string_view attribute,
    std::string_view example_value,
    const std::vector<std::pair<std::string, std::string>> &remaining_values,
    const AtomizeOptions &options = {});

// {topic, k, attributes:[{name, raw_names, frequency, upweighted, score,
// validated}]}
std::string SchemaToJson(const Schema &schema);
Schema SchemaFromJson(std::string_view text);

}  // namespace structview

#endif  // STRUCTVIEW_SCHEMA_H_
