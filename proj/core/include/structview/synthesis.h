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

#ifndef STRUCTVIEW_SYNTHESIS_H_
#define STRUCTVIEW_SYNTHESIS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "structview/corpus.h"
#include "structview/gateway.h"
#include "structview/sandbox.h"

namespace structview {

enum class PromptVariant { kA, kB };
enum class CandidateKind { kScript, kNativePattern };
enum class CandidateStatus { kPending, kCompiled, kRejected };

const char *PromptVariantName(PromptVariant v);
const char *CandidateKindName(CandidateKind k);

struct CandidateFunction {
  std::string id;  // "{attribute}:{A|B}:{ordinal}"
  std::string attribute;
  PromptVariant prompt = PromptVariant::kA;
  size_t ordinal = 0;
  std::string source;
  CandidateKind kind = CandidateKind::kNativePattern;
  std::string entrypoint;
  CandidateStatus status = CandidateStatus::kPending;
  std::string reject_reason;
  std::optional<double> score;
};

// Identifier-safe form of an attribute: every non-alphanumeric byte becomes
// '_', and a leading digit gets a '_' prefix.
std::string FunctionField(std::string_view attribute);

// "get_<function_field>_field"
std::string EntryPointName(std::string_view function_field);

struct ExtractedSource {
  std::string source;
  CandidateKind kind;
};

// Pulls program text out of a completion. The first fenced block wins; a
// JSON object with a "pattern" member is a native pattern, anything else a
// script. A bare function body (the continuation style the task-only prompt
// invites) gets the prompt's stub header prepended. nullopt when empty.
std::optional<ExtractedSource> ExtractSource(std::string_view completion,
                                             std::string_view attribute,
                                             std::string_view function_field);

struct SynthesisOptions {
  size_t per_prompt = 1;       // completions per (snippet, prompt)
  size_t max_candidates = 10;  // cap on candidates per attribute
};

// One completion per snippet x {fn_gen_A, fn_gen_B} x per_prompt, charged
// to the synthesis phase. `attribute` is the normalized key used in ids;
// `display` is the spelling shown to the model.
std::vector<CandidateFunction> Synthesize(Gateway &gateway,
                                          std::string_view attribute,
                                          std::string_view display,
                                          const std::vector<Snippet> &snippets,
                                          const SynthesisOptions &options = {});

// Marks the candidate compiled or rejected (reason in reject_reason).
// Scripts need a sandbox; with none they are rejected as
// "sandbox-unavailable".
void CompileCheck(CandidateFunction &candidate, const SandboxClient *sandbox);

// Per-document output of a compiled candidate: values joined with ", " and
// trimmed; errors and timeouts yield "".
std::vector<std::string> Execute(const CandidateFunction &candidate,
                                 const Corpus &corpus,
                                 const SandboxClient *sandbox);

// outputs[c][d] for each candidate over the whole corpus, `width` candidates
// at a time.
std::vector<std::vector<std::string>> ExecuteAll(
    const std::vector<CandidateFunction> &candidates, const Corpus &corpus,
    const SandboxClient *sandbox, size_t width);

}  // namespace structview

#endif  // STRUCTVIEW_SYNTHESIS_H_
