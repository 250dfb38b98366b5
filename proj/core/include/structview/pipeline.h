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

#ifndef STRUCTVIEW_PIPELINE_H_
#define STRUCTVIEW_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "structview/aggregation.h"
#include "structview/corpus.h"
#include "structview/cost_model.h"
#include "structview/gateway.h"
#include "structview/schema.h"
#include "structview/status.h"
#include "structview/synthesis.h"
#include "structview/table.h"

namespace structview {

enum class RunMode { kDirect, kCode, kCodePlus };

const char *RunModeName(RunMode mode);
std::optional<RunMode> ParseRunMode(std::string_view name);

struct RunConfig {
  std::string lake;
  std::string topic;
  RunMode mode = RunMode::kCodePlus;
  size_t k = 10;            // schema size
  size_t sample_size = 10;  // schema sample and D_eval
  double tau = kDefaultTau;
  size_t b = kDefaultBuckets;
  double boost = 2.0;
  size_t chunk_budget = kDefaultChunkBudget;
  size_t candidates = kMaxRetained;  // per attribute, before filtering
  size_t per_prompt = 1;
  size_t snippets = 3;
  size_t snippet_window = 1000;
  std::string fixtures;
  bool replay_only = false;
  bool record = false;
  std::string model = "text-davinci-003";
  std::string out_dir = ".";
  bool validate = true;
  bool atomize = false;
  bool filter = true;  // codeplus only; off keeps every compiled candidate
  std::vector<std::string> sandbox_command;
  size_t parallelism = 4;
};

// Throws kInvalidArgument for an unusable configuration.
void ValidateConfig(const RunConfig &config);

struct CandidateDiagnostics {
  std::string id;
  std::string prompt;
  std::string kind;
  std::string status;
  std::string reject_reason;
  std::optional<double> score;
};

struct AttributeDiagnostics {
  std::string attribute;  // display name
  std::string key;        // normalized
  std::optional<bool> validated;
  size_t snippets = 0;
  std::optional<double> e;
  std::vector<std::string> oracle;  // per D_eval doc, after the guard
  std::vector<CandidateDiagnostics> candidates;
  std::vector<std::string> retained;
  std::optional<LabelModel> label_model;
  std::string dropped;  // reason, empty when the column is kept
  std::optional<AtomizationResult> atomized;
};

struct RunResult {
  RunConfig config;
  Schema schema;
  Table table;
  std::vector<std::string> eval_docs;
  std::vector<AttributeDiagnostics> attributes;
  std::string ledger_json;
  uint64_t total_tokens = 0;
  CostScenario scenario;  // this run, for the predicted-cost report
  // Direct mode only: a provider or fixture failure that cut the run short.
  // The table then holds the documents finished before it.
  std::optional<Error> failure;
};

// Runs the configured mode over the lake. `provider` may be null when every
// completion is served from fixtures. Errors propagate as structview::Error.
RunResult RunPipeline(const RunConfig &config,
                      std::shared_ptr<Provider> provider);

// Same, over an already ingested corpus.
RunResult RunPipeline(const RunConfig &config, const Corpus &corpus,
                      Gateway &gateway);

// Schema synthesis alone: open extraction over the stride sample, then
// frequency ranking with one re-rank call, truncated to k. `extractions`,
// when given, receives the provenance-filtered sample extractions.
Schema SynthesizeSchema(const RunConfig &config, const Corpus &corpus,
                        Gateway &gateway,
                        std::vector<SampleExtraction> *extractions = nullptr);

// Builds the gateway a config asks for: fixture store, mode and model.
std::unique_ptr<Gateway> MakeGateway(const RunConfig &config,
                                     std::shared_ptr<Provider> provider);

// Stem used for artifact names: the lake directory's final component.
std::string LakeName(std::string_view lake);

std::string DiagnosticsJson(const RunResult &result);

// Writes <lake>.schema.json, .table.csv, .table.jsonl, .diagnostics.json
// and .cost.json into config.out_dir. Returns the paths written.
std::vector<std::string> WriteArtifacts(const RunResult &result);

// The oracle's answer from an attr_extract completion: the value of the
// first "- attr: value" line, else the first non-empty line.
std::string ParseOracleCompletion(std::string_view completion);

}  // namespace structview

#endif  // STRUCTVIEW_PIPELINE_H_
