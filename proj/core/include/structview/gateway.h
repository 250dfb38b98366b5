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

#ifndef STRUCTVIEW_GATEWAY_H_
#define STRUCTVIEW_GATEWAY_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structview/prompts.h"

namespace structview {

// Pipeline phases that tokens are charged to.
enum class Phase { kSchema, kDirect, kSynthesis, kOracle, kCleaning };

inline constexpr std::array<Phase, 5> kAllPhases = {
    Phase::kSchema, Phase::kDirect, Phase::kSynthesis, Phase::kOracle,
    Phase::kCleaning};

const char *PhaseName(Phase phase);

struct TokenCounts {
  uint64_t prompt_tokens = 0;
  uint64_t completion_tokens = 0;

  uint64_t total() const { return prompt_tokens + completion_tokens; }
};

// Thread-safe per-phase token totals. Counts only ever grow.
class CostLedger {
 public:
  void Add(Phase phase, uint64_t prompt_tokens, uint64_t completion_tokens);

  TokenCounts phase(Phase phase) const;
  TokenCounts total() const;
  uint64_t calls(Phase phase) const;
  uint64_t total_calls() const;

  // {"phases": {"schema": {...}, ...}, "total": {...}}
  std::string ToJson() const;

 private:
  mutable std::mutex mu_;
  std::array<TokenCounts, kAllPhases.size()> phases_{};
  std::array<uint64_t, kAllPhases.size()> calls_{};
};

// SHA-256 of `data` as lowercase hex.
std::string Sha256Hex(std::string_view data);

struct CompletionRecord {
  std::string model;
  std::string prompt_hash;
  std::string prompt;
  std::string completion;
  uint64_t prompt_tokens = 0;
  uint64_t completion_tokens = 0;
};

std::string CompletionRecordToJson(const CompletionRecord &record);
// Throws kParse on malformed input or a hash that does not match the prompt.
CompletionRecord CompletionRecordFromJson(std::string_view line);

// JSONL fixture file of CompletionRecords keyed by (model, prompt_hash).
// Reads take a shared lock; appends are serialized and flushed line by line.
class FixtureStore {
 public:
  FixtureStore() = default;
  // Loads `path` if it exists. With `persist`, new records are appended.
  explicit FixtureStore(std::string path, bool persist = false);

  std::optional<CompletionRecord> Lookup(std::string_view model,
                                         std::string_view prompt_hash) const;
  void Insert(const CompletionRecord &record);

  size_t size() const;
  const std::string &path() const { return path_; }

 private:
  std::string path_;
  bool persist_ = false;
  mutable std::shared_mutex mu_;
  std::map<std::pair<std::string, std::string>, CompletionRecord, std::less<>>
      records_;
};

struct CompletionRequest {
  std::string model;
  std::string prompt;
  TemplateId template_id = TemplateId::kDirectExtract;
  Bindings bindings;
  int max_tokens = 500;
};

struct ProviderResponse {
  std::string completion;
  std::optional<uint64_t> prompt_tokens;
  std::optional<uint64_t> completion_tokens;
};

// A completion backend. Implementations must be callable from several
// threads at once.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual ProviderResponse Complete(const CompletionRequest &request) = 0;
};

enum class GatewayMode {
  kCached,      // serve fixtures when present, otherwise call the provider
  kRecord,      // as kCached, and append new completions to the fixture file
  kReplayOnly,  // fixtures only; a miss is an error
};

struct GatewayOptions {
  GatewayMode mode = GatewayMode::kCached;
  std::string model = "text-davinci-003";
  size_t max_in_flight = 4;
  int max_attempts = 3;
  std::chrono::milliseconds backoff{250};
  int max_tokens = 500;
};

class Gateway {
 public:
  static constexpr std::ptrdiff_t kMaxInFlight = 64;

  Gateway(GatewayOptions options, std::shared_ptr<Provider> provider,
          std::shared_ptr<FixtureStore> fixtures);

  // Renders the template and returns its completion, charging the tokens to
  // `phase`. Throws kFixtureMiss in replay-only mode when the prompt is not
  // in the fixtures and kProvider after the retry budget is spent.
  std::string Complete(TemplateId id, const Bindings &bindings, Phase phase,
                       const std::optional<std::string> &model = std::nullopt);

  const CostLedger &ledger() const { return ledger_; }
  const GatewayOptions &options() const { return options_; }

 private:
  CompletionRecord CallProvider(CompletionRequest request,
                                const std::string &hash);

  GatewayOptions options_;
  std::shared_ptr<Provider> provider_;
  std::shared_ptr<FixtureStore> fixtures_;
  std::counting_semaphore<kMaxInFlight> in_flight_;
  CostLedger ledger_;
};

// OpenAI-style HTTP completion endpoint: POST {base_url}{path} with
// {"model","prompt","max_tokens","temperature":0}.
struct HttpProviderOptions {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/completions";
  std::string api_key;
  std::chrono::seconds timeout{60};
};

// Reads STRUCTVIEW_BASE_URL and STRUCTVIEW_API_KEY over the defaults.
HttpProviderOptions HttpProviderOptionsFromEnv();

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderOptions options);
  ProviderResponse Complete(const CompletionRequest &request) override;

 private:
  HttpProviderOptions options_;
};

}  // namespace structview

#endif  // STRUCTVIEW_GATEWAY_H_
