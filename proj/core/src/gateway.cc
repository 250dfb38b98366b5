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

#include "structview/gateway.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "structview/status.h"
#include "structview/tokenizer.h"

namespace structview {

using json = nlohmann::json;

const char *PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kSchema: return "schema";
    case Phase::kDirect: return "direct";
    case Phase::kSynthesis: return "synthesis";
    case Phase::kOracle: return "oracle";
    case Phase::kCleaning: return "cleaning";
  }
  return "unknown";
}

void CostLedger::Add(Phase phase, uint64_t prompt_tokens,
                     uint64_t completion_tokens) {
  std::lock_guard lock(mu_);
  auto &slot = phases_[static_cast<size_t>(phase)];
  slot.prompt_tokens += prompt_tokens;
  slot.completion_tokens += completion_tokens;
  ++calls_[static_cast<size_t>(phase)];
}

TokenCounts CostLedger::phase(Phase phase) const {
  std::lock_guard lock(mu_);
  return phases_[static_cast<size_t>(phase)];
}

TokenCounts CostLedger::total() const {
  std::lock_guard lock(mu_);
  TokenCounts sum;
  for (const auto &p : phases_) {
    sum.prompt_tokens += p.prompt_tokens;
    sum.completion_tokens += p.completion_tokens;
  }
  return sum;
}

uint64_t CostLedger::calls(Phase phase) const {
  std::lock_guard lock(mu_);
  return calls_[static_cast<size_t>(phase)];
}

uint64_t CostLedger::total_calls() const {
  std::lock_guard lock(mu_);
  uint64_t n = 0;
  for (auto c : calls_) n += c;
  return n;
}

std::string CostLedger::ToJson() const {
  json phases = json::object();
  for (Phase p : kAllPhases) {
    const TokenCounts c = phase(p);
    phases[PhaseName(p)] = {{"calls", calls(p)},
                            {"prompt_tokens", c.prompt_tokens},
                            {"completion_tokens", c.completion_tokens},
                            {"total_tokens", c.total()}};
  }
  const TokenCounts t = total();
  json out = {{"phases", phases},
              {"total",
               {{"calls", total_calls()},
                {"prompt_tokens", t.prompt_tokens},
                {"completion_tokens", t.completion_tokens},
                {"total_tokens", t.total()}}}};
  return out.dump(2);
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string CompletionRecordToJson(const CompletionRecord &record) {
  json j = {{"model", record.model},
            {"prompt_hash", record.prompt_hash},
            {"prompt", record.prompt},
            {"completion", record.completion},
            {"prompt_tokens", record.prompt_tokens},
            {"completion_tokens", record.completion_tokens}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

CompletionRecord CompletionRecordFromJson(std::string_view line) {
  CompletionRecord r;
  try {
    const json j = json::parse(line);
    r.model = j.at("model").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.completion = j.at("completion").get<std::string>();
    r.prompt_hash = j.value("prompt_hash", Sha256Hex(r.prompt));
    r.prompt_tokens = j.value("prompt_tokens", uint64_t{0});
    r.completion_tokens = j.value("completion_tokens", uint64_t{0});
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParse,
                std::string("malformed completion record: ") + e.what());
  }
  if (r.prompt_hash != Sha256Hex(r.prompt)) {
    throw Error(ErrorCode::kParse, "prompt_hash does not match prompt");
  }
  return r;
}

FixtureStore::FixtureStore(std::string path, bool persist)
    : path_(std::move(path)), persist_(persist) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      CompletionRecord r = CompletionRecordFromJson(line);
      auto key = std::make_pair(r.model, r.prompt_hash);
      records_.insert_or_assign(std::move(key), std::move(r));
    } catch (const Error &e) {
      throw Error(ErrorCode::kParse,
                  path_ + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<CompletionRecord> FixtureStore::Lookup(
    std::string_view model, std::string_view prompt_hash) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(std::make_pair(std::string(model),
                                         std::string(prompt_hash)));
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void FixtureStore::Insert(const CompletionRecord &record) {
  std::unique_lock lock(mu_);
  auto key = std::make_pair(record.model, record.prompt_hash);
  if (records_.count(key) != 0) return;
  records_.emplace(std::move(key), record);
  if (persist_ && !path_.empty()) {
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot append to " + path_);
    out << CompletionRecordToJson(record) << '\n';
  }
}

size_t FixtureStore::size() const {
  std::shared_lock lock(mu_);
  return records_.size();
}

Gateway::Gateway(GatewayOptions options, std::shared_ptr<Provider> provider,
                 std::shared_ptr<FixtureStore> fixtures)
    : options_(std::move(options)),
      provider_(std::move(provider)),
      fixtures_(fixtures ? std::move(fixtures)
                         : std::make_shared<FixtureStore>()),
      in_flight_(static_cast<std::ptrdiff_t>(std::clamp<size_t>(
          options_.max_in_flight, 1, static_cast<size_t>(kMaxInFlight)))) {}

std::string Gateway::Complete(TemplateId id, const Bindings &bindings,
                              Phase phase,
                              const std::optional<std::string> &model) {
  CompletionRequest request;
  request.model = model.value_or(options_.model);
  request.prompt = RenderTemplate(id, bindings);
  request.template_id = id;
  request.bindings = bindings;
  request.max_tokens = options_.max_tokens;
  const std::string hash = Sha256Hex(request.prompt);

  CompletionRecord record;
  if (auto cached = fixtures_->Lookup(request.model, hash)) {
    record = std::move(*cached);
  } else if (options_.mode == GatewayMode::kReplayOnly) {
    throw Error(ErrorCode::kFixtureMiss,
                std::string("fixture miss for ") + TemplateName(id) +
                    " prompt " + hash.substr(0, 12) + " (model " +
                    request.model + ")");
  } else {
    record = CallProvider(std::move(request), hash);
    fixtures_->Insert(record);
  }
  ledger_.Add(phase, record.prompt_tokens, record.completion_tokens);
  return record.completion;
}

CompletionRecord Gateway::CallProvider(CompletionRequest request,
                                       const std::string &hash) {
  if (!provider_) {
    throw Error(ErrorCode::kProvider,
                "no completion provider configured for uncached prompt " +
                    hash.substr(0, 12));
  }
  std::string last_error;
  auto delay = options_.backoff;
  for (int attempt = 1; attempt <= std::max(1, options_.max_attempts);
       ++attempt) {
    try {
      in_flight_.acquire();
      ProviderResponse response;
      try {
        response = provider_->Complete(request);
      } catch (...) {
        in_flight_.release();
        throw;
      }
      in_flight_.release();

      CompletionRecord r;
      r.model = request.model;
      r.prompt_hash = hash;
      r.completion = std::move(response.completion);
      r.prompt_tokens =
          response.prompt_tokens.value_or(CountTokens(request.prompt));
      r.completion_tokens =
          response.completion_tokens.value_or(CountTokens(r.completion));
      r.prompt = std::move(request.prompt);
      return r;
    } catch (const std::exception &e) {
      last_error = e.what();
      spdlog::warn("provider attempt {}/{} failed: {}", attempt,
                   options_.max_attempts, last_error);
      if (attempt < options_.max_attempts) {
        std::this_thread::sleep_for(delay);
        delay *= 2;
      }
    }
  }
  throw Error(ErrorCode::kProvider, "provider failed: " + last_error);
}

}  // namespace structview
