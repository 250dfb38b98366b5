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

// Command-line entry point.
//
// Sample usage:
//   structview run data/synthetic_lake --topic "medical device reports"
//       --mode codeplus --fixtures data/synthetic_lake.fixtures.jsonl
//       --replay-only --out /tmp/out
//   structview eval --table /tmp/out/synthetic_lake.table.jsonl
//       --gold data/synthetic_lake.gold.jsonl
//   structview cost --docs 10000 --attributes 10

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "structview/corpus.h"
#include "structview/cost_model.h"
#include "structview/evaluate.h"
#include "structview/gateway.h"
#include "structview/pipeline.h"
#include "structview/status.h"
#include "structview/synthetic_lake.h"
#include "structview/table.h"
#include "structview/text_util.h"

namespace {

using structview::Error;
using structview::ErrorCode;

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Column names of a JSONL table in order of first appearance.
std::vector<std::string> JsonlColumns(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kParse, "malformed table line: " + line);
    }
    for (const char *field : {"values", "provenance"}) {
      if (!j.contains(field) || !j[field].is_object()) continue;
      for (const auto &[k, v] : j[field].items()) {
        if (std::find(out.begin(), out.end(), k) == out.end()) {
          out.push_back(k);
        }
      }
    }
  }
  return out;
}

std::shared_ptr<structview::Provider> MakeProvider(
    const std::string &kind, const structview::RunConfig &config) {
  if (kind == "simulated") {
    return std::make_shared<structview::SimulatedProvider>(
        structview::SyntheticLakeFromCorpus(structview::Ingest(config.lake)));
  }
  if (config.replay_only) return nullptr;
  return std::make_shared<structview::HttpProvider>(
      structview::HttpProviderOptionsFromEnv());
}

void AddRunOptions(CLI::App *cmd, structview::RunConfig &c,
                   std::string &mode, std::string &provider) {
  cmd->add_option("lake", c.lake, "Directory of .txt/.html documents")
      ->required();
  cmd->add_option("--topic", c.topic, "What the documents are about")
      ->required();
  cmd->add_option("--mode", mode, "direct, code or codeplus")
      ->check(CLI::IsMember({"direct", "code", "codeplus"}))
      ->capture_default_str();
  cmd->add_option("--k", c.k, "Schema size")->capture_default_str();
  cmd->add_option("--sample", c.sample_size, "Schema sample and D_eval size")
      ->capture_default_str();
  cmd->add_option("--tau", c.tau, "Abstention threshold")
      ->capture_default_str();
  cmd->add_option("--b", c.b, "Classes per document")->capture_default_str();
  cmd->add_option("--boost", c.boost, "Re-rank boost")->capture_default_str();
  cmd->add_option("--chunk-budget", c.chunk_budget, "Tokens per chunk")
      ->capture_default_str();
  cmd->add_option("--candidates", c.candidates,
                  "Candidate functions per attribute")
      ->capture_default_str();
  cmd->add_option("--per-prompt", c.per_prompt,
                  "Completions per (snippet, prompt)")
      ->capture_default_str();
  cmd->add_option("--snippets", c.snippets, "Snippets per attribute")
      ->capture_default_str();
  cmd->add_option("--fixtures", c.fixtures, "Completion fixture file (JSONL)");
  cmd->add_flag("--replay-only", c.replay_only,
                "Serve completions from fixtures only");
  cmd->add_flag("--record", c.record, "Append new completions to fixtures");
  cmd->add_option("--model", c.model, "Model name")->capture_default_str();
  cmd->add_option("--out", c.out_dir, "Artifact directory")
      ->capture_default_str();
  cmd->add_flag("!--no-validate", c.validate, "Skip attribute validation");
  cmd->add_flag("--atomize", c.atomize, "Decompose attribute values");
  cmd->add_flag("!--no-filter", c.filter,
                "Keep every compiled candidate (codeplus)");
  cmd->add_option("--sandbox", c.sandbox_command,
                  "Extractor worker command for script candidates")
      ->delimiter(' ');
  cmd->add_option("--parallelism", c.parallelism, "Concurrent calls")
      ->capture_default_str();
  cmd->add_option("--provider", provider, "http or simulated")
      ->check(CLI::IsMember({"http", "simulated"}))
      ->capture_default_str();
}

void Finish(structview::RunConfig &c, const std::string &mode) {
  c.mode = *structview::ParseRunMode(mode);
}

int Run(structview::RunConfig c, const std::string &provider) {
  structview::ValidateConfig(c);
  const structview::Corpus corpus = structview::Ingest(c.lake);
  auto gateway = structview::MakeGateway(c, MakeProvider(provider, c));
  structview::RunResult result = structview::RunPipeline(c, corpus, *gateway);
  for (const auto &path : structview::WriteArtifacts(result)) {
    std::cout << path << "\n";
  }
  std::cout << "tokens " << result.total_tokens << "\n";
  if (result.failure) throw *result.failure;
  return 0;
}

int Schema(structview::RunConfig c, const std::string &provider) {
  structview::ValidateConfig(c);
  const structview::Corpus corpus = structview::Ingest(c.lake);
  auto gateway = structview::MakeGateway(c, MakeProvider(provider, c));
  const structview::Schema schema =
      structview::SynthesizeSchema(c, corpus, *gateway);
  const std::string json = structview::SchemaToJson(schema);
  if (c.out_dir.empty() || c.out_dir == "-") {
    std::cout << json;
  } else {
    std::filesystem::create_directories(c.out_dir);
    const std::string path =
        c.out_dir + "/" + structview::LakeName(c.lake) + ".schema.json";
    structview::WriteFile(path, json);
    std::cout << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Structured tables from semi-structured document lakes."};
  app.set_config("--config", "", "TOML config file");
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  // ingest
  std::string ingest_lake, ingest_format;
  size_t ingest_budget = structview::kDefaultChunkBudget;
  auto *ingest = app.add_subcommand("ingest", "Summarize a lake");
  ingest->add_option("lake", ingest_lake)->required();
  ingest->add_option("--format", ingest_format, "html or txt")
      ->check(CLI::IsMember({"html", "txt"}));
  ingest->add_option("--chunk-budget", ingest_budget)->capture_default_str();

  // schema, run
  structview::RunConfig schema_cfg, run_cfg;
  std::string schema_mode = "codeplus", run_mode = "codeplus";
  std::string schema_provider = "http", run_provider = "http";
  auto *schema = app.add_subcommand("schema", "Synthesize the schema only");
  AddRunOptions(schema, schema_cfg, schema_mode, schema_provider);
  schema_cfg.out_dir = "-";
  auto *run = app.add_subcommand("run", "Build the table");
  AddRunOptions(run, run_cfg, run_mode, run_provider);

  // eval
  std::string eval_table, eval_gold, eval_schema;
  bool eval_json = false;
  auto *eval = app.add_subcommand("eval", "Score a table against gold");
  eval->add_option("--table", eval_table, "Predicted .table.jsonl")
      ->required();
  eval->add_option("--gold", eval_gold, "Gold table JSONL")->required();
  eval->add_option("--schema", eval_schema,
                   "Predicted .schema.json (rank order for F1@k)");
  eval->add_flag("--json", eval_json, "JSON output");

  // cost
  structview::CostScenario scenario;
  bool cost_json = false;
  auto *cost = app.add_subcommand("cost", "Direct versus code token cost");
  cost->add_option("--docs", scenario.n_docs)->capture_default_str();
  cost->add_option("--tokens-per-doc", scenario.tokens_per_doc)
      ->capture_default_str();
  cost->add_option("--attributes", scenario.n_attributes)
      ->capture_default_str();
  cost->add_option("--sample", scenario.sample_size)->capture_default_str();
  cost->add_option("--candidates", scenario.candidates_per_attribute)
      ->capture_default_str();
  cost->add_option("--overhead", scenario.prompt_overhead)
      ->capture_default_str();
  cost->add_option("--allowance", scenario.completion_allowance)
      ->capture_default_str();
  cost->add_option("--snippet-tokens", scenario.snippet_tokens)
      ->capture_default_str();
  cost->add_flag("--json", cost_json, "JSON output");

  // synth-lake
  std::string synth_out, synth_gold;
  structview::SyntheticLakeOptions synth;
  auto *synth_cmd =
      app.add_subcommand("synth-lake", "Generate the synthetic test lake");
  synth_cmd->add_option("--out", synth_out, "Document directory")->required();
  synth_cmd->add_option("--gold", synth_gold, "Gold table JSONL")->required();
  synth_cmd->add_option("--docs", synth.docs)->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  spdlog::set_default_logger(spdlog::stderr_color_mt("structview"));
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*ingest) {
      const auto corpus = structview::Ingest(
          ingest_lake, structview::ParseDocFormat(ingest_format));
      size_t tokens = 0, chunks = 0;
      for (const auto &d : corpus.documents()) {
        tokens += d.token_count;
        chunks += structview::ChunkDocument(d, ingest_budget).size();
      }
      std::cout << "documents " << corpus.size() << "\n"
                << "tokens " << tokens << "\n"
                << "chunks " << chunks << "\n";
      return 0;
    }
    if (*schema) {
      Finish(schema_cfg, schema_mode);
      return Schema(schema_cfg, schema_provider);
    }
    if (*run) {
      Finish(run_cfg, run_mode);
      return Run(run_cfg, run_provider);
    }
    if (*eval) {
      const std::string gold_text = ReadFile(eval_gold);
      const std::string pred_text = ReadFile(eval_table);
      const auto gold = structview::ParseJsonl(gold_text,
                                               JsonlColumns(gold_text), "");
      std::vector<std::string> ranked;
      std::vector<std::string> columns = JsonlColumns(pred_text);
      if (!eval_schema.empty()) {
        ranked = structview::SchemaFromJson(ReadFile(eval_schema)).names();
        // Table columns follow schema rank.
        std::vector<std::string> ordered;
        for (const auto &name : ranked) {
          for (const auto &c : columns) {
            if (structview::NormalizeAttribute(c) == name) ordered.push_back(c);
          }
        }
        for (const auto &c : columns) {
          if (std::find(ordered.begin(), ordered.end(), c) == ordered.end()) {
            ordered.push_back(c);
          }
        }
        columns = std::move(ordered);
      }
      const auto pred = structview::ParseJsonl(pred_text, columns, "");
      const auto report = structview::EvaluateTable(pred, gold, ranked);
      std::cout << (eval_json ? structview::EvalReportJson(report)
                              : structview::EvalReportText(report));
      return 0;
    }
    if (*cost) {
      const auto report = structview::MakeCostReport(scenario);
      std::cout << (cost_json ? structview::CostReportJson(report)
                              : structview::CostReportText(report));
      return 0;
    }
    if (*synth_cmd) {
      const auto lake = structview::GenerateSyntheticLake(synth);
      structview::WriteSyntheticLake(lake, synth_out, synth_gold);
      std::cout << "documents " << lake.docs.size() << "\n";
      return 0;
    }
  } catch (const Error &e) {
    spdlog::error("{}: {}", structview::ErrorCodeName(e.code()), e.what());
    return structview::ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
