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

// Acceptance checks over fixtures only: no network, no script worker.
// Prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.
//
// Usage: structview_acceptance [source_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "planted_votes.h"
#include "reference_metrics.h"
#include "structview/aggregation.h"
#include "structview/cost_model.h"
#include "structview/evaluate.h"
#include "structview/metrics.h"
#include "structview/pipeline.h"
#include "structview/synthetic_lake.h"
#include "test_util.h"

namespace structview {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

Outcome MetricOracles() {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto pred = testing::RandomTuples(rng);
    auto gold = testing::RandomTuples(rng);
    if (gold.empty()) gold.push_back({"d0", "Monarch", "Charles III"});
    TupleSet p, g;
    for (const auto &t : pred) p.insert({t.doc, t.attr, t.value});
    for (const auto &t : gold) g.insert({t.doc, t.attr, t.value});
    const auto got = PairF1(p, g);
    const auto want = testing::RefPairF1(pred, gold);
    worst = std::max({worst, std::abs(got.precision - want[0]),
                      std::abs(got.recall - want[1]),
                      std::abs(got.f1 - want[2])});
    const std::string a = testing::RandomAnswer(rng);
    const std::string b = testing::RandomAnswer(rng);
    worst = std::max(worst, std::abs(TextF1(a, b) - testing::SquadF1(a, b)));
  }
  return {worst <= 1e-12, fmt::format("1000 cases, max |diff| {:.3g}", worst)};
}

Outcome Crossovers() {
  const CostScenario s;  // 10 attributes, 10K docs of 10K tokens, k = 10
  const double docs = CrossoverDocs(s), attrs = CrossoverAttrs(s);
  return {docs >= 20 && docs <= 80 && attrs >= 1000 && attrs <= 5000,
          fmt::format("crossover_docs {:.1f} in [20, 80], crossover_attrs "
                      "{:.0f} in [1000, 5000]",
                      docs, attrs)};
}

Outcome CostRatio() {
  const CostReport r = MakeCostReport(CostScenario{});
  return {r.ratio >= 50, fmt::format("cost_direct / cost_code = {:.1f} at "
                                     "10000 docs",
                                     r.ratio)};
}

Outcome LabelModelRecovery() {
  constexpr int kSeeds = 20;
  double total_error = 0;
  int ws_wins = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    // Five accuracies spread over [0.6, 0.9] in a seeded order.
    std::vector<double> a = {0.6, 0.675, 0.75, 0.825, 0.9};
    std::shuffle(a.begin(), a.end(), std::mt19937_64(100 + seed));
    const auto votes = testing::PlantVotes(a, 3, 500, 1000 + seed);
    const LabelModel m = FitLabelModel(votes.matrix);
    if (!m.fitted) return {false, "seed " + std::to_string(seed) + ": " +
                                      m.fallback_reason};
    double err = 0;
    for (size_t j = 0; j < a.size(); ++j) err += std::abs(m.accuracies[j] - a[j]);
    total_error += err / a.size();
    const double ws = testing::DocAccuracy(Aggregate(votes.matrix, &m),
                                           votes.truth);
    const double mv = testing::DocAccuracy(Aggregate(votes.matrix, nullptr),
                                           votes.truth);
    ws_wins += ws >= mv;
  }
  const double mean_error = total_error / kSeeds;
  return {mean_error <= 0.05 && ws_wins >= 0.9 * kSeeds,
          fmt::format("mean |a_hat - a| {:.4f} (<= 0.05), WS >= MV in {}/{} "
                      "seeds",
                      mean_error, ws_wins, kSeeds)};
}

RunConfig ReplayConfig(const fs::path &source) {
  RunConfig c;
  c.lake = (source / "data/synthetic_lake").string();
  c.topic = std::string(kSyntheticTopic);
  c.fixtures = (source / "data/synthetic_lake.fixtures.jsonl").string();
  c.replay_only = true;
  return c;
}

Outcome EndToEnd(const fs::path &source) {
  const RunResult r = RunPipeline(ReplayConfig(source), nullptr);
  const EvalReport report =
      EvaluateTable(r.table, GenerateSyntheticLake().Gold(), r.schema.names());

  size_t bad = 0, bad_filtered = 0, low_retained = 0;
  for (const auto &a : r.attributes) {
    for (const auto &c : a.candidates) {
      const bool retained =
          std::count(a.retained.begin(), a.retained.end(), c.id) > 0;
      if (SyntheticCandidateRole(c.id) == PlantedRole::kWrongField) {
        ++bad;
        bad_filtered += !retained && c.score && *c.score <= kScoreThreshold;
      }
      low_retained += retained && (!c.score || *c.score <= kScoreThreshold);
    }
  }
  std::optional<double> e_sparse, e_dense;
  for (const auto &a : r.attributes) {
    if (a.attribute == "Recall Status") e_sparse = a.e;
    if (a.attribute == "Review Panel") e_dense = a.e;
  }
  const bool e_paths = e_sparse && *e_sparse <= r.config.tau && e_dense &&
                       *e_dense > r.config.tau;
  return {bad > 0 && bad_filtered == bad && low_retained == 0 &&
              report.pair.f1 >= 0.9 && e_paths,
          fmt::format("{}/{} bad candidates filtered, Pair F1 {:.3f}, "
                      "e(Recall Status) {:.2f} <= tau, e(Review Panel) {:.2f} "
                      "> tau",
                      bad_filtered, bad, report.pair.f1, e_sparse.value_or(-1),
                      e_dense.value_or(-1))};
}

Outcome Determinism(const fs::path &source) {
  testing::TempDir first, second;
  RunConfig c = ReplayConfig(source);
  c.out_dir = first.path().string();
  const auto a = WriteArtifacts(RunPipeline(c, nullptr));
  c.out_dir = second.path().string();
  const auto b = WriteArtifacts(RunPipeline(c, nullptr));
  size_t same = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    same += testing::ReadFile(a[i]) == testing::ReadFile(b[i]);
  }
  return {a.size() == b.size() && same == a.size() && !a.empty(),
          fmt::format("{}/{} artifacts byte-identical across two replay runs",
                      same, a.size())};
}

}  // namespace
}  // namespace structview

int main(int argc, char **argv) {
  using namespace structview;
  spdlog::set_level(spdlog::level::off);
  const fs::path source = argc > 1 ? argv[1] : STRUCTVIEW_SOURCE_DIR;

  const std::vector<Criterion> criteria = {
      {"metric oracle equivalence", 5, MetricOracles},
      {"cost crossovers", 1, Crossovers},
      {"cost reduction order of magnitude", 1, CostRatio},
      {"label model recovery", 30, LabelModelRecovery},
      {"end-to-end on the synthetic lake", 60, [&] { return EndToEnd(source); }},
      {"replay determinism", 60, [&] { return Determinism(source); }},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool pass = o.pass && secs < c.budget_s;
    failed += !pass;
    std::cout << fmt::format("{} {}: {} [{:.2f}s / {:.0f}s]\n",
                             pass ? "PASS" : "FAIL", c.name, o.detail, secs,
                             c.budget_s);
  }
  return failed == 0 ? 0 : 1;
}
