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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>

#include "structview/status.h"
#include "structview/tokenizer.h"
#include "test_util.h"

namespace structview {
namespace {

using testing::FakeProvider;

const Bindings kBindings = {{"chunk", "Monarch: Charles III"},
                            {"attribute", "monarch"}};

std::string TempPath(const std::string &name) {
  return (std::filesystem::temp_directory_path() /
          (name + "_" + std::to_string(::getpid())))
      .string();
}

TEST(Sha256Test, KnownVectors) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(CostLedgerTest, PerPhaseTotals) {
  CostLedger ledger;
  ledger.Add(Phase::kSchema, 10, 2);
  ledger.Add(Phase::kSchema, 5, 1);
  ledger.Add(Phase::kOracle, 7, 0);
  EXPECT_EQ(ledger.phase(Phase::kSchema).prompt_tokens, 15u);
  EXPECT_EQ(ledger.phase(Phase::kSchema).completion_tokens, 3u);
  EXPECT_EQ(ledger.calls(Phase::kSchema), 2u);
  EXPECT_EQ(ledger.total().total(), 25u);
  EXPECT_EQ(ledger.total_calls(), 3u);
  EXPECT_NE(ledger.ToJson().find("\"oracle\""), std::string::npos);
}

TEST(CompletionRecordTest, JsonRoundTripAndHashCheck) {
  CompletionRecord r{"m", Sha256Hex("p"), "p", "c", 3, 1};
  const CompletionRecord back =
      CompletionRecordFromJson(CompletionRecordToJson(r));
  EXPECT_EQ(back.prompt, "p");
  EXPECT_EQ(back.completion, "c");
  EXPECT_EQ(back.prompt_tokens, 3u);
  r.prompt_hash = Sha256Hex("other");
  EXPECT_THROW(CompletionRecordFromJson(CompletionRecordToJson(r)), Error);
}

TEST(GatewayTest, ChargesLedgerWithTokenCounts) {
  auto provider = std::make_shared<FakeProvider>(
      [](const CompletionRequest &) { return " Charles III"; });
  auto gw = testing::MakeFakeGateway(provider);
  EXPECT_EQ(gw->Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle),
            " Charles III");
  const std::string prompt = RenderTemplate(TemplateId::kAttrExtract, kBindings);
  EXPECT_EQ(gw->ledger().phase(Phase::kOracle).prompt_tokens,
            CountTokens(prompt));
  EXPECT_EQ(gw->ledger().phase(Phase::kOracle).completion_tokens, 2u);
}

TEST(GatewayTest, CacheHitsSkipProviderButStillCharge) {
  auto provider = std::make_shared<FakeProvider>(
      [](const CompletionRequest &) { return "x"; });
  auto gw = testing::MakeFakeGateway(provider);
  gw->Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle);
  gw->Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle);
  EXPECT_EQ(provider->total(), 1);
  EXPECT_EQ(gw->ledger().calls(Phase::kOracle), 2u);
}

TEST(GatewayTest, RecordThenReplay) {
  const std::string path = TempPath("structview_fixtures.jsonl");
  std::remove(path.c_str());
  {
    auto provider = std::make_shared<FakeProvider>(
        [](const CompletionRequest &r) { return "for " + r.model; });
    GatewayOptions o;
    o.mode = GatewayMode::kRecord;
    Gateway gw(o, provider, std::make_shared<FixtureStore>(path, true));
    gw.Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle);
    gw.Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle, "small");
  }
  GatewayOptions o;
  o.mode = GatewayMode::kReplayOnly;
  Gateway replay(o, nullptr, std::make_shared<FixtureStore>(path));
  EXPECT_EQ(replay.Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle),
            "for text-davinci-003");
  EXPECT_EQ(replay.Complete(TemplateId::kAttrExtract, kBindings,
                            Phase::kOracle, "small"),
            "for small");
  try {
    replay.Complete(TemplateId::kAttrExtract, {{"chunk", "other"},
                                               {"attribute", "a"}},
                    Phase::kOracle);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kFixtureMiss);
  }
  std::remove(path.c_str());
}

TEST(GatewayTest, RetriesThenGivesUp) {
  int failures_left = 2;
  std::mutex mu;
  auto flaky = std::make_shared<FakeProvider>([&](const CompletionRequest &) {
    std::lock_guard<std::mutex> lock(mu);
    if (failures_left-- > 0) throw std::runtime_error("503");
    return std::string("ok");
  });
  auto gw = testing::MakeFakeGateway(flaky);
  EXPECT_EQ(gw->Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle),
            "ok");
  EXPECT_EQ(flaky->total(), 3);

  auto dead = std::make_shared<FakeProvider>(
      [](const CompletionRequest &) -> std::string {
        throw std::runtime_error("down");
      });
  auto gw2 = testing::MakeFakeGateway(dead);
  try {
    gw2->Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kProvider);
  }
  EXPECT_EQ(dead->total(), 3);
}

TEST(GatewayTest, InFlightBound) {
  std::atomic<int> now{0}, peak{0};
  auto slow = std::make_shared<FakeProvider>([&](const CompletionRequest &) {
    const int n = ++now;
    int p = peak.load();
    while (n > p && !peak.compare_exchange_weak(p, n)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --now;
    return std::string("x");
  });
  auto gw = testing::MakeFakeGateway(slow, 2);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&, i] {
      gw->Complete(TemplateId::kAttrExtract,
                   {{"chunk", std::to_string(i)}, {"attribute", "a"}},
                   Phase::kOracle);
    });
  }
  for (auto &t : threads) t.join();
  EXPECT_LE(peak.load(), 2);
  EXPECT_EQ(slow->total(), 6);
}

TEST(GatewayTest, NoProviderIsProviderError) {
  Gateway gw(GatewayOptions{}, nullptr, nullptr);
  try {
    gw.Complete(TemplateId::kAttrExtract, kBindings, Phase::kOracle);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kProvider);
  }
}

}  // namespace
}  // namespace structview
