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

#include "structview/synthesis.h"

#include <cctype>
#include <set>

#include <spdlog/spdlog.h>

#include "structview/parallel.h"
#include "structview/pattern.h"
#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {

const char *PromptVariantName(PromptVariant v) {
  return v == PromptVariant::kA ? "A" : "B";
}

const char *CandidateKindName(CandidateKind k) {
  return k == CandidateKind::kScript ? "script" : "native_pattern";
}

std::string FunctionField(std::string_view attribute) {
  std::string out;
  out.reserve(attribute.size() + 1);
  for (char c : attribute) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  if (!out.empty() && std::isdigit(static_cast<unsigned char>(out.front()))) {
    out.insert(out.begin(), '_');
  }
  return out;
}

std::string EntryPointName(std::string_view function_field) {
  return "get_" + std::string(function_field) + "_field";
}

namespace {

// Header of the task-only prompt, which the model continues.
std::string StubHeader(std::string_view attribute,
                       std::string_view function_field) {
  std::string h = "import re\n\ndef ";
  h += EntryPointName(function_field);
  h += "(text: str):\n    \"\"\"\n    Function to extract the \"";
  h += attribute;
  h += " field\". \n    \"\"\"\n";
  return h;
}

}  // namespace

std::optional<ExtractedSource> ExtractSource(std::string_view completion,
                                             std::string_view attribute,
                                             std::string_view function_field) {
  std::string_view body = completion;
  bool fenced = false;
  if (size_t open = completion.find("```"); open != std::string_view::npos) {
    size_t start = completion.find('\n', open);
    if (start != std::string_view::npos) {
      ++start;
      size_t close = completion.find("```", start);
      body = completion.substr(start, close == std::string_view::npos
                                          ? std::string_view::npos
                                          : close - start);
      fenced = true;
    }
  }
  std::string_view trimmed = Trim(body);
  if (trimmed.empty()) return std::nullopt;
  if (LooksLikePatternProgram(trimmed)) {
    return ExtractedSource{std::string(trimmed), CandidateKind::kNativePattern};
  }
  if (fenced || body.find("def ") != std::string_view::npos) {
    std::string src(body);
    if (src.find("def ") == std::string::npos) {
      src = StubHeader(attribute, function_field) + src;
    }
    return ExtractedSource{std::move(src), CandidateKind::kScript};
  }
  // Bare continuation of the stub: keep the body's own indentation.
  return ExtractedSource{StubHeader(attribute, function_field) +
                             std::string(body),
                         CandidateKind::kScript};
}

std::vector<CandidateFunction> Synthesize(Gateway &gateway,
                                          std::string_view attribute,
                                          std::string_view display,
                                          const std::vector<Snippet> &snippets,
                                          const SynthesisOptions &options) {
  if (snippets.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "synthesis needs at least one snippet");
  }
  const std::string field = FunctionField(display);
  struct Job {
    PromptVariant variant;
    size_t ordinal;
    const Snippet *snippet;
  };
  std::vector<Job> jobs;
  for (size_t s = 0; s < snippets.size(); ++s) {
    for (PromptVariant v : {PromptVariant::kA, PromptVariant::kB}) {
      for (size_t r = 0; r < std::max<size_t>(1, options.per_prompt); ++r) {
        if (jobs.size() >= options.max_candidates) break;
        jobs.push_back({v, s * std::max<size_t>(1, options.per_prompt) + r,
                        &snippets[s]});
      }
    }
  }

  std::vector<std::string> completions(jobs.size());
  ParallelFor(jobs.size(), gateway.options().max_in_flight, [&](size_t i) {
    const Bindings b = {{"chunk", jobs[i].snippet->text},
                        {"attribute", std::string(display)},
                        {"function_field", field}};
    completions[i] = gateway.Complete(jobs[i].variant == PromptVariant::kA
                                          ? TemplateId::kFnGenA
                                          : TemplateId::kFnGenB,
                                      b, Phase::kSynthesis);
  });

  std::vector<CandidateFunction> out;
  std::set<std::string> seen_sources;
  for (size_t i = 0; i < jobs.size(); ++i) {
    auto extracted = ExtractSource(completions[i], display, field);
    CandidateFunction c;
    c.attribute = std::string(attribute);
    c.prompt = jobs[i].variant;
    c.ordinal = jobs[i].ordinal;
    c.id = c.attribute + ":" + PromptVariantName(c.prompt) + ":" +
           std::to_string(c.ordinal);
    if (!extracted) {
      spdlog::info("{}: empty completion, no candidate", c.id);
      continue;
    }
    if (!seen_sources.insert(extracted->source).second) {
      spdlog::debug("{}: duplicate source dropped", c.id);
      continue;
    }
    c.source = std::move(extracted->source);
    c.kind = extracted->kind;
    c.entrypoint = EntryPointName(field);
    out.push_back(std::move(c));
  }
  return out;
}

void CompileCheck(CandidateFunction &candidate, const SandboxClient *sandbox) {
  if (candidate.kind == CandidateKind::kNativePattern) {
    try {
      PatternProgram::Parse(candidate.source);
      candidate.status = CandidateStatus::kCompiled;
      candidate.reject_reason.clear();
    } catch (const PatternError &e) {
      candidate.status = CandidateStatus::kRejected;
      candidate.reject_reason = e.reason();
    }
    return;
  }
  if (sandbox == nullptr || !sandbox->available()) {
    candidate.status = CandidateStatus::kRejected;
    candidate.reject_reason = "sandbox-unavailable";
    return;
  }
  const SandboxCheckResult r =
      sandbox->Check(candidate.source, candidate.entrypoint);
  candidate.status =
      r.ok ? CandidateStatus::kCompiled : CandidateStatus::kRejected;
  candidate.reject_reason = r.ok ? "" : r.reason;
}

namespace {

std::string JoinValues(const std::vector<std::string> &values) {
  std::string out;
  for (const auto &v : values) {
    std::string_view t = Trim(v);
    if (t.empty()) continue;
    if (!out.empty()) out += ", ";
    out += t;
  }
  return out;
}

}  // namespace

std::vector<std::string> Execute(const CandidateFunction &candidate,
                                 const Corpus &corpus,
                                 const SandboxClient *sandbox) {
  if (candidate.status != CandidateStatus::kCompiled) {
    throw Error(ErrorCode::kInvalidArgument,
                "candidate " + candidate.id + " is not compiled");
  }
  std::vector<std::string> out(corpus.size());
  if (candidate.kind == CandidateKind::kNativePattern) {
    const PatternProgram program = PatternProgram::Parse(candidate.source);
    for (size_t d = 0; d < corpus.size(); ++d) {
      try {
        out[d] = JoinValues(program.Apply(corpus.at(d).text));
      } catch (const std::exception &e) {
        // std::regex can run out of stack on pathological input.
        spdlog::debug("{} on {}: {}", candidate.id, corpus.at(d).id, e.what());
      }
    }
    return out;
  }
  if (sandbox == nullptr) return out;
  std::vector<SandboxDoc> docs;
  docs.reserve(corpus.size());
  for (const auto &d : corpus.documents()) docs.push_back({d.id, d.text});
  const auto results =
      sandbox->Run(candidate.source, candidate.entrypoint, docs);
  size_t errors = 0;
  for (size_t d = 0; d < results.size() && d < out.size(); ++d) {
    if (results[d].error) {
      ++errors;
      continue;
    }
    out[d] = JoinValues(results[d].values);
  }
  if (errors > 0) {
    spdlog::info("{}: {} of {} documents errored", candidate.id, errors,
                 corpus.size());
  }
  return out;
}

std::vector<std::vector<std::string>> ExecuteAll(
    const std::vector<CandidateFunction> &candidates, const Corpus &corpus,
    const SandboxClient *sandbox, size_t width) {
  std::vector<std::vector<std::string>> outputs(candidates.size());
  ParallelFor(candidates.size(), width, [&](size_t c) {
    outputs[c] = Execute(candidates[c], corpus, sandbox);
  });
  return outputs;
}

}  // namespace structview
