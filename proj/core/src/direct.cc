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

#include "structview/direct.h"

#include <map>
#include <spdlog/spdlog.h>

#include "structview/parallel.h"
#include "structview/text_util.h"

namespace structview {
namespace {

// Shared line grammar; `normalize` selects the attribute form.
std::vector<AttributeValue> ParseLines(std::string_view completion,
                                       bool normalize) {
  std::vector<AttributeValue> out;
  for (const std::string &raw : SplitLines(completion)) {
    std::string_view line = Trim(raw);
    if (line.size() < 2 || line.front() != '-') continue;
    line = Trim(line.substr(1));
    const size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::string_view attr = Trim(line.substr(0, colon));
    std::string_view value = Trim(line.substr(colon + 1));
    if (attr.empty() || value.empty()) continue;
    out.push_back({normalize ? NormalizeAttribute(attr) : std::string(attr),
                   std::string(value)});
  }
  return out;
}

}  // namespace

std::vector<AttributeValue> DeserializePairs(std::string_view completion) {
  return ParseLines(completion, true);
}

std::vector<AttributeValue> DeserializeRawPairs(std::string_view completion) {
  return ParseLines(completion, false);
}

const std::string *DirectRecord::Find(std::string_view attribute) const {
  for (const auto &p : pairs) {
    if (p.attribute == attribute) return &p.value;
  }
  return nullptr;
}

void MergeFirstWins(std::vector<AttributeValue> &pairs,
                    const std::vector<AttributeValue> &incoming) {
  for (const auto &p : incoming) {
    bool seen = false;
    for (const auto &q : pairs) {
      if (q.attribute == p.attribute) {
        seen = true;
        break;
      }
    }
    if (!seen) pairs.push_back(p);
  }
}

DirectResult ExtractDirect(Gateway &gateway, const Corpus &corpus,
                           std::string_view topic,
                           const DirectOptions &options) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "direct extraction on empty corpus");
  }
  struct Job {
    size_t doc;
    Chunk chunk;
  };
  std::vector<Job> jobs;
  std::vector<size_t> first_job(corpus.size() + 1, 0);
  for (size_t d = 0; d < corpus.size(); ++d) {
    first_job[d] = jobs.size();
    for (auto &c : ChunkDocument(corpus.at(d), options.chunk_budget)) {
      jobs.push_back({d, std::move(c)});
    }
  }
  first_job[corpus.size()] = jobs.size();

  std::vector<std::optional<std::vector<AttributeValue>>> parsed(jobs.size());
  std::optional<Error> failure;
  try {
    ParallelFor(jobs.size(), options.parallelism, [&](size_t i) {
      const Bindings b = {{"chunk", jobs[i].chunk.text},
                          {"topic", std::string(topic)}};
      parsed[i] = DeserializePairs(
          gateway.Complete(TemplateId::kDirectExtract, b, Phase::kDirect));
      if (parsed[i]->empty()) {
        spdlog::debug("{} chunk {}: no attribute lines", jobs[i].chunk.doc_id,
                      jobs[i].chunk.index);
      }
    });
  } catch (const Error &e) {
    spdlog::error("direct extraction aborted: {}", e.what());
    failure = e;
  }

  DirectResult result;
  result.failure = failure;
  result.prompts = jobs.size();
  std::map<std::string, size_t> doc_freq;
  for (size_t d = 0; d < corpus.size(); ++d) {
    bool complete = true;
    DirectRecord rec;
    rec.doc_id = corpus.at(d).id;
    for (size_t j = first_job[d]; j < first_job[d + 1]; ++j) {
      if (!parsed[j]) {
        complete = false;
        break;
      }
      MergeFirstWins(rec.pairs, *parsed[j]);
    }
    if (!complete) continue;
    for (const auto &p : rec.pairs) ++doc_freq[p.attribute];
    result.records.push_back(std::move(rec));
  }

  result.schema.topic = std::string(topic);
  result.schema.k = result.records.size();
  for (const auto &[name, freq] : doc_freq) {
    AttributeCandidate c;
    c.name = name;
    c.raw_names = {name};
    c.spelling_counts[name] = freq;
    c.frequency = freq;
    c.score = static_cast<double>(freq);
    result.schema.ranked.push_back(std::move(c));
  }
  SortRanked(result.schema.ranked);
  return result;
}

}  // namespace structview
