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

#include "structview/evaluate.h"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "structview/text_util.h"

namespace structview {

TupleSet TableTuples(const Table &table, size_t k) {
  const size_t n = std::min(k, table.attributes.size());
  TupleSet out;
  for (const auto &[doc, row] : table.rows) {
    for (size_t i = 0; i < n; ++i) {
      auto it = row.find(table.attributes[i]);
      if (it != row.end() && !Trim(it->second.value).empty()) {
        out.insert({doc, table.attributes[i], it->second.value});
      }
    }
  }
  return out;
}

EvalReport EvaluateTable(const Table &predicted, const Table &gold,
                         const std::vector<std::string> &ranked) {
  EvalReport r;
  r.k = gold.attributes.size();
  r.pair = PairF1(TableTuples(predicted, r.k), TableTuples(gold, r.k));
  r.f1_at_k = F1AtK(ranked.empty() ? predicted.attributes : ranked,
                    gold.attributes, r.k);

  for (const auto &g : gold.attributes) {
    const std::string key = NormalizeAttribute(g);
    const auto col =
        std::find_if(predicted.attributes.begin(), predicted.attributes.end(),
                     [&](const std::string &a) {
                       return NormalizeAttribute(a) == key;
                     });
    if (col == predicted.attributes.end()) {
      r.missing.push_back(g);
      r.text_f1[g] = 0.0;
      continue;
    }
    double sum = 0;
    for (const auto &[doc, row] : gold.rows) {
      const Cell *want = gold.Find(doc, g);
      const Cell *got = predicted.Find(doc, *col);
      sum += TextF1(got ? got->value : "", want ? want->value : "");
    }
    r.text_f1[g] = gold.rows.empty() ? 0.0 : sum / gold.rows.size();
  }
  return r;
}

std::string EvalReportJson(const EvalReport &r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["pair_f1"] = {{"precision", r.pair.precision},
                  {"recall", r.pair.recall},
                  {"f1", r.pair.f1}};
  j["f1_at_k"] = r.f1_at_k;
  j["text_f1"] = r.text_f1;
  j["missing"] = r.missing;
  return j.dump(2) + "\n";
}

std::string EvalReportText(const EvalReport &r) {
  std::ostringstream out;
  out << fmt::format("pair precision  {:.4f}\n", r.pair.precision);
  out << fmt::format("pair recall     {:.4f}\n", r.pair.recall);
  out << fmt::format("pair f1         {:.4f}\n", r.pair.f1);
  out << fmt::format("f1@{:<12} {:.4f}\n", r.k, r.f1_at_k);
  for (const auto &[attr, f1] : r.text_f1) {
    out << fmt::format("text f1  {:<24} {:.4f}\n", attr, f1);
  }
  return out.str();
}

}  // namespace structview
