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

#include "structview/schema.h"

#include <algorithm>
#include <cctype>
#include <set>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "structview/direct.h"
#include "structview/parallel.h"
#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {

using json = nlohmann::json;

const std::string &AttributeCandidate::display_name() const {
  const std::string *best = &name;
  size_t best_count = 0;
  for (const auto &[spelling, count] : spelling_counts) {
    if (count > best_count) {
      best = &spelling;
      best_count = count;
    }
  }
  return *best;
}

std::vector<std::string> Schema::names() const {
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (const auto &c : ranked) out.push_back(c.name);
  return out;
}

const AttributeCandidate *Schema::Find(std::string_view name) const {
  for (const auto &c : ranked) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void SortRanked(std::vector<AttributeCandidate> &ranked) {
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const AttributeCandidate &a, const AttributeCandidate &b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.name < b.name;
                   });
}

std::vector<size_t> StrideSample(size_t n, size_t k) {
  const size_t m = std::min(n, k);
  std::vector<size_t> out;
  out.reserve(m);
  for (size_t i = 0; i < m; ++i) out.push_back(i * n / m);
  return out;
}

std::vector<RawPair> FilterByProvenance(const std::vector<RawPair> &pairs,
                                        std::string_view doc_text) {
  std::vector<RawPair> kept;
  for (const auto &p : pairs) {
    if (ContainsCaseInsensitive(doc_text, Trim(p.attribute))) {
      kept.push_back(p);
    } else {
      spdlog::debug("provenance filter dropped '{}'", p.attribute);
    }
  }
  return kept;
}

std::vector<SampleExtraction> GenerateCandidates(
    Gateway &gateway, const std::vector<const Document *> &sample,
    std::string_view topic, size_t chunk_budget, size_t parallelism) {
  struct Job {
    size_t doc;
    Chunk chunk;
  };
  std::vector<Job> jobs;
  for (size_t d = 0; d < sample.size(); ++d) {
    for (auto &c : ChunkDocument(*sample[d], chunk_budget)) {
      jobs.push_back({d, std::move(c)});
    }
  }
  std::vector<std::vector<AttributeValue>> parsed(jobs.size());
  ParallelFor(jobs.size(), parallelism, [&](size_t i) {
    const Bindings b = {{"chunk", jobs[i].chunk.text},
                        {"topic", std::string(topic)}};
    parsed[i] = DeserializeRawPairs(
        gateway.Complete(TemplateId::kDirectExtract, b, Phase::kSchema));
  });

  std::vector<SampleExtraction> out(sample.size());
  for (size_t d = 0; d < sample.size(); ++d) out[d].doc_id = sample[d]->id;
  for (size_t i = 0; i < jobs.size(); ++i) {
    const Document &doc = *sample[jobs[i].doc];
    std::vector<RawPair> raw;
    for (auto &p : parsed[i]) raw.push_back({p.attribute, p.value});
    for (auto &p : FilterByProvenance(raw, doc.text)) {
      out[jobs[i].doc].pairs.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<std::string> ParseRerankCompletion(std::string_view completion) {
  std::vector<std::string> names;
  for (const std::string &raw : SplitLines(completion)) {
    std::string_view line = Trim(raw);
    if (!line.empty() && (line.front() == '-' || line.front() == '*')) {
      line = Trim(line.substr(1));
    } else {
      size_t i = 0;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')')) {
        line = Trim(line.substr(i + 1));
      }
    }
    // "- name: value" style answers keep only the name.
    if (size_t colon = line.find(':'); colon != std::string_view::npos) {
      line = Trim(line.substr(0, colon));
    }
    std::string name = NormalizeAttribute(line);
    if (!name.empty()) names.push_back(std::move(name));
  }
  return names;
}

Schema RankCandidates(Gateway *gateway,
                      const std::vector<SampleExtraction> &extractions,
                      std::string_view topic, size_t k,
                      const RankOptions &options) {
  std::map<std::string, AttributeCandidate> by_name;
  for (const auto &ex : extractions) {
    std::set<std::string> seen_in_doc;
    for (const auto &p : ex.pairs) {
      const std::string key = NormalizeAttribute(p.attribute);
      if (key.empty()) continue;
      auto &c = by_name[key];
      c.name = key;
      ++c.spelling_counts[std::string(Trim(p.attribute))];
      if (seen_in_doc.insert(key).second) ++c.frequency;
    }
  }
  if (by_name.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no attribute candidates to rank");
  }

  Schema schema;
  schema.topic = std::string(topic);
  schema.k = k;
  for (auto &[key, c] : by_name) {
    for (const auto &[spelling, n] : c.spelling_counts) {
      c.raw_names.push_back(spelling);
    }
    c.score = static_cast<double>(c.frequency);
    schema.ranked.push_back(std::move(c));
  }
  SortRanked(schema.ranked);

  if (gateway != nullptr && options.rerank) {
    std::string listing;
    for (const auto &c : schema.ranked) {
      listing += "- " + c.display_name() + "\n";
    }
    if (!listing.empty()) listing.pop_back();
    const Bindings b = {{"topic", std::string(topic)},
                        {"attributes", listing}};
    const std::vector<std::string> picked = ParseRerankCompletion(
        gateway->Complete(TemplateId::kSchemaRerank, b, Phase::kSchema));
    size_t boosted = 0;
    for (auto &c : schema.ranked) {
      if (std::find(picked.begin(), picked.end(), c.name) != picked.end()) {
        c.upweighted = true;
        c.score = static_cast<double>(c.frequency) * options.boost;
        ++boosted;
      }
    }
    if (boosted == 0) {
      spdlog::warn("re-rank completion named no known attribute; keeping "
                   "frequency order");
    }
    SortRanked(schema.ranked);
  }
  return schema;
}

bool IsAffirmative(std::string_view completion) {
  return StartsWith(ToLower(Trim(completion)), "yes");
}

bool ValidateAttribute(Gateway &gateway, std::string_view attribute,
                       const std::vector<std::string> &sampled_values,
                       std::string_view topic) {
  if (sampled_values.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "validation needs at least one value");
  }
  bool keep = false;
  const size_t n = std::min(sampled_values.size(), kValidationSampleSize);
  for (size_t i = 0; i < n; ++i) {
    const Bindings b = {{"value", sampled_values[i]},
                        {"attr_str", std::string(attribute)},
                        {"topic", std::string(topic)}};
    const std::string answer =
        gateway.Complete(TemplateId::kSchemaValidate, b, Phase::kCleaning);
    if (IsAffirmative(answer)) {
      keep = true;
    } else if (!StartsWith(ToLower(Trim(answer)), "no")) {
      spdlog::debug("validation answer '{}' treated as No", answer);
    }
  }
  return keep;
}

namespace {

std::string JsonScalarToString(const json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto &e : v) {
      if (!out.empty()) out += ", ";
      out += JsonScalarToString(e);
    }
    return out;
  }
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

std::optional<std::vector<AtomicPair>> ParseAtomicPairs(
    std::string_view completion) {
  const size_t open = completion.find('[');
  const size_t close = completion.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open) {
    return std::nullopt;
  }
  json j = json::parse(completion.substr(open, close - open + 1), nullptr,
                       false);
  if (j.is_discarded() || !j.is_array() || j.empty()) return std::nullopt;
  std::vector<AtomicPair> out;
  for (const auto &e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string()) {
      return std::nullopt;
    }
    out.push_back({e[0].get<std::string>(), JsonScalarToString(e[1])});
  }
  return out;
}

std::optional<AtomizationResult> Atomize(
    Gateway &gateway, std::string_view attribute,
    std::string_view example_value,
    const std::vector<std::pair<std::string, std::string>> &remaining_values,
    const AtomizeOptions &options) {
  const Bindings big = {{"complex_attribute", std::string(attribute)},
                        {"complex_value", std::string(example_value)}};
  const std::string completion = gateway.Complete(
      TemplateId::kAtomicCleanBig, big, Phase::kCleaning, options.big_model);
  auto exemplar = ParseAtomicPairs(completion);
  if (!exemplar) {
    spdlog::warn("atomization of '{}' skipped: exemplar completion is not a "
                 "JSON list",
                 attribute);
    return std::nullopt;
  }
  AtomizationResult result;
  result.attribute = std::string(attribute);
  result.exemplar = *exemplar;
  for (const auto &[doc_id, value] : remaining_values) {
    AtomizedValue av;
    av.doc_id = doc_id;
    for (const auto &atom : *exemplar) {
      const Bindings small = {
          {"complex_attribute_example", std::string(attribute)},
          {"complex_extraction_example", std::string(example_value)},
          {"cleaned_attribute_example", atom.name},
          {"cleaned_value_example", atom.value},
          {"complex_attribute", std::string(attribute)},
          {"complex_extraction", value},
          {"cleaned_attribute", atom.name}};
      const std::string answer =
          gateway.Complete(TemplateId::kAtomicCleanSmall, small,
                           Phase::kCleaning, options.small_model);
      const auto lines = SplitLines(Trim(answer));
      av.pairs.push_back(
          {atom.name, lines.empty() ? "" : std::string(Trim(lines.front()))});
    }
    result.values.push_back(std::move(av));
  }
  return result;
}

std::string SchemaToJson(const Schema &schema) {
  json attrs = json::array();
  for (const auto &c : schema.ranked) {
    json a = {{"name", c.name},
              {"raw_names", c.raw_names},
              {"frequency", c.frequency},
              {"upweighted", c.upweighted},
              {"score", c.score}};
    a["validated"] = c.validated ? json(*c.validated) : json(nullptr);
    attrs.push_back(std::move(a));
  }
  json out = {{"topic", schema.topic}, {"k", schema.k}, {"attributes", attrs}};
  return out.dump(2) + "\n";
}

Schema SchemaFromJson(std::string_view text) {
  Schema schema;
  try {
    const json j = json::parse(text);
    schema.topic = j.value("topic", "");
    schema.k = j.value("k", size_t{0});
    for (const auto &a : j.at("attributes")) {
      AttributeCandidate c;
      c.name = a.at("name").get<std::string>();
      c.raw_names =
          a.value("raw_names", std::vector<std::string>{c.name});
      c.frequency = a.value("frequency", size_t{0});
      c.upweighted = a.value("upweighted", false);
      c.score = a.value("score", static_cast<double>(c.frequency));
      if (a.contains("validated") && a["validated"].is_boolean()) {
        c.validated = a["validated"].get<bool>();
      }
      schema.ranked.push_back(std::move(c));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParse, std::string("malformed schema: ") + e.what());
  }
  return schema;
}

}  // namespace structview
