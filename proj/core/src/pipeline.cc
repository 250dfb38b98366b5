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

#include "structview/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <numeric>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "structview/direct.h"
#include "structview/parallel.h"
#include "structview/sandbox.h"
#include "structview/text_util.h"

namespace structview {
namespace {

using ojson = nlohmann::ordered_json;

void Truncate(Schema &schema, size_t k) {
  if (schema.ranked.size() > k) schema.ranked.resize(k);
}

CostScenario ScenarioFor(const RunConfig &config, const Corpus &corpus,
                         size_t n_attributes) {
  CostScenario s;
  s.n_docs = static_cast<double>(corpus.size());
  size_t tokens = 0;
  for (const auto &d : corpus.documents()) tokens += d.token_count;
  s.tokens_per_doc =
      std::max(1.0, static_cast<double>(tokens) / std::max<double>(1, s.n_docs));
  s.n_attributes = static_cast<double>(std::max<size_t>(1, n_attributes));
  s.sample_size = static_cast<double>(
      std::min(config.sample_size, std::max<size_t>(1, corpus.size())));
  s.candidates_per_attribute =
      static_cast<double>(std::max<size_t>(1, config.candidates));
  return s;
}

// Chunk of `doc` holding the first mention of `attribute`, else chunk 0.
std::string OracleChunk(const Document &doc, std::string_view attribute,
                        size_t budget) {
  const std::vector<Chunk> chunks = ChunkDocument(doc, budget);
  for (const auto &c : chunks) {
    if (FindCaseInsensitive(c.text, attribute) != std::string::npos) {
      return c.text;
    }
  }
  return chunks.empty() ? std::string() : chunks.front().text;
}

// Sampled schema values of one attribute, sample order.
std::vector<std::pair<std::string, std::string>> SampleValues(
    const std::vector<SampleExtraction> &extractions, std::string_view key) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &ex : extractions) {
    for (const auto &p : ex.pairs) {
      if (NormalizeAttribute(p.attribute) == key && !Trim(p.value).empty()) {
        out.emplace_back(ex.doc_id, std::string(Trim(p.value)));
        break;
      }
    }
  }
  return out;
}

void RunDirect(const RunConfig &config, const Corpus &corpus,
               Gateway &gateway, RunResult &result) {
  DirectOptions options;
  options.chunk_budget = config.chunk_budget;
  options.parallelism = config.parallelism;
  DirectResult direct = ExtractDirect(gateway, corpus, config.topic, options);
  result.failure = direct.failure;
  result.schema = std::move(direct.schema);
  Truncate(result.schema, config.k);

  std::vector<std::string> columns;
  for (const auto &c : result.schema.ranked) {
    columns.push_back(c.display_name());
    AttributeDiagnostics diag;
    diag.attribute = c.display_name();
    diag.key = c.name;
    result.attributes.push_back(std::move(diag));
  }
  std::vector<std::string> doc_ids;
  std::vector<CellPrediction> cells;
  for (const auto &record : direct.records) {
    doc_ids.push_back(record.doc_id);
    for (const auto &c : result.schema.ranked) {
      if (const std::string *v = record.Find(c.name)) {
        cells.push_back({record.doc_id, c.display_name(), *v,
                         std::string(kProvenanceDirect)});
      }
    }
  }
  result.table = Materialize(config.topic, std::move(columns), doc_ids, cells);
}

// Provenance of one aggregated cell: the heaviest retained function that
// cast the winning vote.
std::string CellProvenance(const VoteMatrix &matrix, size_t doc,
                           const Prediction &prediction,
                           const std::vector<std::string> &ids,
                           const LabelModel &model) {
  int best = -1;
  double best_weight = 0;
  for (size_t f = 0; f < matrix.num_functions(); ++f) {
    const Vote &v = matrix.at(doc, f);
    const bool match = prediction.has_value
                           ? v.kind == Vote::Kind::kValue &&
                                 v.value == prediction.value
                           : v.kind == Vote::Kind::kNoValue;
    if (!match) continue;
    const double w =
        model.fitted ? VoteWeight(model.accuracies[f], model.b) : 1.0;
    if (best < 0 || w > best_weight) {
      best = static_cast<int>(f);
      best_weight = w;
    }
  }
  return best < 0 ? std::string() : ids[static_cast<size_t>(best)];
}

void RunCode(const RunConfig &config, const Corpus &corpus, Gateway &gateway,
             RunResult &result) {
  const bool plus = config.mode == RunMode::kCodePlus;
  const std::vector<size_t> sample_idx =
      StrideSample(corpus.size(), config.sample_size);
  std::vector<const Document *> sample;
  for (size_t i : sample_idx) {
    sample.push_back(&corpus.at(i));
    result.eval_docs.push_back(corpus.at(i).id);
  }

  std::vector<SampleExtraction> extractions;
  result.schema = SynthesizeSchema(config, corpus, gateway, &extractions);

  std::unique_ptr<SandboxClient> sandbox;
  if (!config.sandbox_command.empty()) {
    SandboxOptions so;
    so.command = config.sandbox_command;
    sandbox = std::make_unique<SandboxClient>(std::move(so));
  }

  std::vector<std::string> columns;
  std::vector<CellPrediction> cells;
  for (auto &attr : result.schema.ranked) {
    AttributeDiagnostics diag;
    diag.attribute = attr.display_name();
    diag.key = attr.name;
    const std::string display = diag.attribute;
    auto drop = [&](const char *reason) {
      spdlog::info("attribute '{}' dropped: {}", display, reason);
      diag.dropped = reason;
      result.attributes.push_back(std::move(diag));
    };

    const auto values = SampleValues(extractions, attr.name);
    if (config.validate && !values.empty()) {
      std::vector<std::string> sampled;
      for (size_t i = 0; i < values.size() && i < kValidationSampleSize; ++i) {
        sampled.push_back(values[i].second);
      }
      attr.validated =
          ValidateAttribute(gateway, display, sampled, config.topic);
      diag.validated = attr.validated;
      if (!*attr.validated) {
        drop("validation");
        continue;
      }
    }
    if (config.atomize && !values.empty()) {
      std::vector<std::pair<std::string, std::string>> rest(values.begin() + 1,
                                                            values.end());
      diag.atomized = Atomize(gateway, display, values.front().second, rest);
    }

    KeywordSearchOptions ks;
    ks.window = config.snippet_window;
    ks.max_hits = config.snippets;
    std::vector<Snippet> snippets = KeywordSearch(corpus, display, ks);
    if (snippets.empty() && attr.name != display) {
      snippets = KeywordSearch(corpus, attr.name, ks);
    }
    diag.snippets = snippets.size();
    if (snippets.empty()) {
      drop("no-snippets");
      continue;
    }

    SynthesisOptions so;
    so.per_prompt = plus ? config.per_prompt : 1;
    so.max_candidates = plus ? config.candidates : 1;
    std::vector<CandidateFunction> candidates =
        Synthesize(gateway, attr.name, display, snippets, so);
    std::vector<CandidateFunction> compiled;
    for (auto &c : candidates) {
      CompileCheck(c, sandbox.get());
      if (c.status == CandidateStatus::kCompiled) compiled.push_back(c);
    }
    if (compiled.empty()) {
      for (const auto &c : candidates) {
        diag.candidates.push_back({c.id, PromptVariantName(c.prompt),
                                   CandidateKindName(c.kind), "rejected",
                                   c.reject_reason, std::nullopt});
      }
      drop("no-compiled-candidates");
      continue;
    }
    std::vector<std::vector<std::string>> outputs =
        ExecuteAll(compiled, corpus, sandbox.get(), config.parallelism);

    std::vector<size_t> retained(compiled.size());
    std::iota(retained.begin(), retained.end(), 0);
    double e = 0.0;
    if (plus) {
      std::vector<std::string> oracle(sample.size());
      ParallelFor(sample.size(), config.parallelism, [&](size_t i) {
        const Bindings b = {
            {"chunk", OracleChunk(*sample[i], display, config.chunk_budget)},
            {"attribute", display}};
        oracle[i] = GuardOracleValue(
            ParseOracleCompletion(
                gateway.Complete(TemplateId::kAttrExtract, b, Phase::kOracle)),
            sample[i]->text);
      });
      e = EstimateAbstentionPrior(oracle);
      diag.e = e;
      diag.oracle = oracle;

      std::vector<std::pair<std::string, double>> scored;
      for (size_t c = 0; c < compiled.size(); ++c) {
        std::vector<std::string> on_eval;
        for (size_t i : sample_idx) on_eval.push_back(outputs[c][i]);
        compiled[c].score = ScoreFunction(on_eval, oracle, e, config.tau);
        scored.emplace_back(compiled[c].id, *compiled[c].score);
      }
      if (config.filter) retained = FilterCandidates(scored);
    }
    for (const auto &c : candidates) {
      CandidateDiagnostics cd{c.id, PromptVariantName(c.prompt),
                              CandidateKindName(c.kind),
                              c.status == CandidateStatus::kCompiled
                                  ? "compiled"
                                  : "rejected",
                              c.reject_reason, std::nullopt};
      for (const auto &k : compiled) {
        if (k.id == c.id) cd.score = k.score;
      }
      diag.candidates.push_back(std::move(cd));
    }
    if (retained.empty()) {
      drop("no-retained-functions");
      continue;
    }

    std::vector<std::vector<std::string>> votes;
    std::vector<std::string> ids;
    for (size_t r : retained) {
      votes.push_back(std::move(outputs[r]));
      ids.push_back(compiled[r].id);
    }
    diag.retained = ids;
    const VoteMatrix matrix = VoteMatrix::FromOutputs(
        votes, corpus.size(), e, config.tau, config.b);
    LabelModel model = FitLabelModel(matrix);
    if (!model.fitted) {
      spdlog::debug("'{}': majority vote ({})", display,
                    model.fallback_reason);
    }
    const std::vector<Prediction> predictions = Aggregate(matrix, &model);
    diag.label_model = std::move(model);

    columns.push_back(display);
    for (size_t d = 0; d < corpus.size(); ++d) {
      std::string provenance =
          CellProvenance(matrix, d, predictions[d], ids, *diag.label_model);
      if (!predictions[d].has_value && provenance.empty()) continue;
      cells.push_back({corpus.at(d).id, display, predictions[d].value,
                       std::move(provenance)});
    }
    result.attributes.push_back(std::move(diag));
  }

  std::vector<std::string> doc_ids;
  for (const auto &d : corpus.documents()) doc_ids.push_back(d.id);
  result.table = Materialize(config.topic, std::move(columns), doc_ids, cells);
}

ojson OptionalDouble(const std::optional<double> &v) {
  return v ? ojson(*v) : ojson(nullptr);
}

}  // namespace

const char *RunModeName(RunMode mode) {
  switch (mode) {
    case RunMode::kDirect: return "direct";
    case RunMode::kCode: return "code";
    case RunMode::kCodePlus: return "codeplus";
  }
  return "?";
}

std::optional<RunMode> ParseRunMode(std::string_view name) {
  for (RunMode m : {RunMode::kDirect, RunMode::kCode, RunMode::kCodePlus}) {
    if (name == RunModeName(m)) return m;
  }
  return std::nullopt;
}

void ValidateConfig(const RunConfig &config) {
  auto bad = [](const std::string &what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (config.lake.empty()) bad("lake path is required");
  if (config.topic.empty()) bad("topic is required");
  if (config.k == 0) bad("k must be positive");
  if (config.sample_size == 0) bad("sample size must be positive");
  if (config.tau < 0 || config.tau > 1) bad("tau must lie in [0, 1]");
  if (config.b < 2) bad("b must be at least 2");
  if (config.boost < 1) bad("boost must be at least 1");
  if (config.chunk_budget < kMinChunkBudget) bad("chunk budget below 64");
  if (config.candidates == 0) bad("candidates must be positive");
  if (config.per_prompt == 0) bad("per_prompt must be positive");
  if (config.snippets == 0) bad("snippets must be positive");
  if (config.parallelism == 0) bad("parallelism must be positive");
  if (config.replay_only && config.record) {
    bad("--replay-only and --record are exclusive");
  }
  if (config.replay_only && config.fixtures.empty()) {
    bad("--replay-only needs a fixture file");
  }
}

std::string ParseOracleCompletion(std::string_view completion) {
  const std::vector<AttributeValue> pairs = DeserializeRawPairs(completion);
  if (!pairs.empty()) return pairs.front().value;
  for (const auto &line : SplitLines(completion)) {
    std::string_view t = Trim(line);
    if (StartsWith(t, "- ")) t = Trim(t.substr(2));
    if (!t.empty()) return std::string(t);
  }
  return "";
}

RunResult RunPipeline(const RunConfig &config, const Corpus &corpus,
                      Gateway &gateway) {
  ValidateConfig(config);
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
  RunResult result;
  result.config = config;
  if (config.mode == RunMode::kDirect) {
    RunDirect(config, corpus, gateway, result);
  } else {
    RunCode(config, corpus, gateway, result);
  }
  result.ledger_json = gateway.ledger().ToJson();
  result.total_tokens = gateway.ledger().total().total();
  result.scenario = ScenarioFor(config, corpus, result.schema.ranked.size());
  return result;
}

std::unique_ptr<Gateway> MakeGateway(const RunConfig &config,
                                     std::shared_ptr<Provider> provider) {
  auto fixtures = config.fixtures.empty()
                      ? std::make_shared<FixtureStore>()
                      : std::make_shared<FixtureStore>(config.fixtures,
                                                       config.record);
  GatewayOptions go;
  go.mode = config.replay_only ? GatewayMode::kReplayOnly
            : config.record    ? GatewayMode::kRecord
                               : GatewayMode::kCached;
  go.model = config.model;
  go.max_in_flight = config.parallelism;
  return std::make_unique<Gateway>(go, std::move(provider),
                                   std::move(fixtures));
}

RunResult RunPipeline(const RunConfig &config,
                      std::shared_ptr<Provider> provider) {
  ValidateConfig(config);
  const Corpus corpus = Ingest(config.lake);
  auto gateway = MakeGateway(config, std::move(provider));
  return RunPipeline(config, corpus, *gateway);
}

Schema SynthesizeSchema(const RunConfig &config, const Corpus &corpus,
                        Gateway &gateway,
                        std::vector<SampleExtraction> *extractions) {
  std::vector<const Document *> sample;
  for (size_t i : StrideSample(corpus.size(), config.sample_size)) {
    sample.push_back(&corpus.at(i));
  }
  std::vector<SampleExtraction> ex = GenerateCandidates(
      gateway, sample, config.topic, config.chunk_budget, config.parallelism);
  RankOptions rank;
  rank.boost = config.boost;
  Schema schema = RankCandidates(&gateway, ex, config.topic, config.k, rank);
  Truncate(schema, config.k);
  if (extractions != nullptr) *extractions = std::move(ex);
  return schema;
}

std::string LakeName(std::string_view lake) {
  std::filesystem::path p(lake);
  while (!p.empty() && p.filename().empty()) p = p.parent_path();
  std::string name = p.filename().string();
  return name.empty() || name == "." ? "lake" : name;
}

std::string DiagnosticsJson(const RunResult &r) {
  ojson j;
  j["lake"] = LakeName(r.config.lake);
  j["topic"] = r.config.topic;
  j["mode"] = RunModeName(r.config.mode);
  j["k"] = r.config.k;
  j["tau"] = r.config.tau;
  j["b"] = r.config.b;
  j["eval_docs"] = r.eval_docs;
  ojson attrs = ojson::array();
  for (const auto &a : r.attributes) {
    ojson x;
    x["attribute"] = a.attribute;
    x["key"] = a.key;
    x["validated"] = a.validated ? ojson(*a.validated) : ojson(nullptr);
    x["snippets"] = a.snippets;
    x["e"] = OptionalDouble(a.e);
    x["oracle"] = a.oracle;
    ojson cands = ojson::array();
    for (const auto &c : a.candidates) {
      cands.push_back({{"id", c.id},
                       {"prompt", c.prompt},
                       {"kind", c.kind},
                       {"status", c.status},
                       {"reject_reason", c.reject_reason},
                       {"score", OptionalDouble(c.score)}});
    }
    x["candidates"] = std::move(cands);
    x["retained"] = a.retained;
    if (a.label_model) {
      const LabelModel &m = *a.label_model;
      ojson acc = ojson::object();
      for (size_t i = 0; i < m.accuracies.size() && i < a.retained.size();
           ++i) {
        acc[a.retained[i]] = m.accuracies[i];
      }
      x["label_model"] = {{"fitted", m.fitted},
                          {"fallback_reason", m.fallback_reason},
                          {"accuracies", std::move(acc)},
                          {"vote_rate", m.vote_rate}};
    } else {
      x["label_model"] = nullptr;
    }
    if (a.atomized) {
      ojson ex = ojson::array();
      for (const auto &p : a.atomized->exemplar) ex.push_back({p.name, p.value});
      ojson vals = ojson::array();
      for (const auto &v : a.atomized->values) {
        ojson pairs = ojson::array();
        for (const auto &p : v.pairs) pairs.push_back({p.name, p.value});
        vals.push_back({{"doc_id", v.doc_id}, {"pairs", std::move(pairs)}});
      }
      x["atomized"] = {{"exemplar", std::move(ex)}, {"values", std::move(vals)}};
    }
    x["dropped"] = a.dropped;
    attrs.push_back(std::move(x));
  }
  j["attributes"] = std::move(attrs);
  if (r.failure) {
    j["failure"] = {{"code", ErrorCodeName(r.failure->code())},
                    {"message", r.failure->what()}};
  }
  return j.dump(2) + "\n";
}

std::vector<std::string> WriteArtifacts(const RunResult &result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(result.config.out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + result.config.out_dir +
                                    ": " + ec.message());
  }
  const std::string stem =
      (fs::path(result.config.out_dir) / LakeName(result.config.lake))
          .string();

  ojson cost;
  cost["ledger"] = ojson::parse(result.ledger_json);
  cost["predicted"] =
      ojson::parse(CostReportJson(MakeCostReport(result.scenario)));

  const std::vector<std::pair<std::string, std::string>> files = {
      {stem + ".schema.json", SchemaToJson(result.schema)},
      {stem + ".table.csv", EmitCsv(result.table)},
      {stem + ".table.jsonl", EmitJsonl(result.table)},
      {stem + ".diagnostics.json", DiagnosticsJson(result)},
      {stem + ".cost.json", cost.dump(2) + "\n"},
  };
  std::vector<std::string> written;
  for (const auto &[path, contents] : files) {
    WriteFile(path, contents);
    written.push_back(path);
  }
  return written;
}

}  // namespace structview
