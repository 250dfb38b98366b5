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

#ifndef STRUCTVIEW_SYNTHETIC_LAKE_H_
#define STRUCTVIEW_SYNTHETIC_LAKE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "structview/corpus.h"
#include "structview/gateway.h"
#include "structview/synthesis.h"
#include "structview/table.h"

namespace structview {

// A generated data lake of device reports with planted attributes, plus a
// simulated completion provider that answers every prompt template from the
// planted truth. Lets the whole pipeline run without a model or network.

inline constexpr std::string_view kSyntheticTopic = "medical device reports";

struct PlantedAttribute {
  std::string label;  // as written in the documents
  double presence;    // fraction of documents carrying it
};

const std::vector<PlantedAttribute> &PlantedAttributes();

// Line formats an attribute can take in a document.
enum class PlantedFormat { kColonLine, kTableRow, kBoldParagraph };
inline constexpr size_t kPlantedFormats = 3;

struct SyntheticDoc {
  std::string id;
  std::string text;
  std::map<std::string, std::string> values;    // label -> value
  std::map<std::string, PlantedFormat> formats;  // label -> format
  bool has_footer = false;
};

struct SyntheticLakeOptions {
  size_t docs = 200;
  uint64_t seed = 7;
  size_t filler_sentences = 24;  // per document, split around the fields
};

struct SyntheticLake {
  std::string topic;
  std::vector<SyntheticDoc> docs;  // sorted by id

  std::vector<std::string> labels() const;
  Table Gold() const;
  Corpus ToCorpus() const;
};

SyntheticLake GenerateSyntheticLake(const SyntheticLakeOptions &options = {});

// Rebuilds a lake from documents on disk. Planted values are not recovered;
// the simulated provider only needs the text.
SyntheticLake SyntheticLakeFromCorpus(const Corpus &corpus);

// Writes every document into `dir` (created if needed) and the gold table
// as JSONL to `gold_path`.
void WriteSyntheticLake(const SyntheticLake &lake, const std::string &dir,
                        const std::string &gold_path);

// What the simulated provider plants for each synthesis slot.
enum class PlantedRole {
  kSingleFormat,  // handles only the snippet's own format
  kUniversal,     // all three formats
  kPartial,       // two of three formats
  kWrongField,    // extracts a different attribute: worse than random
};

const char *PlantedRoleName(PlantedRole role);

// Role of the candidate generated from snippet `snippet` with `prompt`.
PlantedRole SyntheticSlotRole(size_t snippet, PromptVariant prompt);

// Role of a candidate id "<attr>:<A|B>:<ordinal>" produced with one
// completion per (snippet, prompt).
PlantedRole SyntheticCandidateRole(std::string_view candidate_id);

class SimulatedProvider : public Provider {
 public:
  explicit SimulatedProvider(SyntheticLake lake);

  ProviderResponse Complete(const CompletionRequest &request) override;

  const SyntheticLake &lake() const { return lake_; }

 private:
  const SyntheticDoc *FindDoc(std::string_view chunk) const;
  std::string Direct(const Bindings &b) const;
  std::string Oracle(const Bindings &b) const;
  std::string Rerank(const Bindings &b) const;
  std::string Validate(const Bindings &b) const;
  std::string FunctionGen(const Bindings &b, PromptVariant prompt) const;
  std::string AtomicBig(const Bindings &b) const;
  std::string AtomicSmall(const Bindings &b) const;

  SyntheticLake lake_;
  Corpus corpus_;
};

}  // namespace structview

#endif  // STRUCTVIEW_SYNTHETIC_LAKE_H_
