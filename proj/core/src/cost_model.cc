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

#include "structview/cost_model.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "structview/status.h"

namespace structview {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double PerDoc(const CostScenario &s) {
  return s.tokens_per_doc + s.prompt_overhead + s.completion_allowance;
}

double PerSnippet(const CostScenario &s) {
  return s.snippet_tokens + s.prompt_overhead + s.completion_allowance;
}

// Code-mode cost per attribute: synthesis plus oracle calls.
double PerAttribute(const CostScenario &s) {
  return (s.candidates_per_attribute + s.sample_size) * PerSnippet(s);
}

nlohmann::json Finite(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

void ValidateScenario(const CostScenario &s) {
  const double fields[] = {s.n_docs,
                           s.tokens_per_doc,
                           s.n_attributes,
                           s.sample_size,
                           s.candidates_per_attribute,
                           s.prompt_overhead,
                           s.completion_allowance,
                           s.snippet_tokens};
  for (double f : fields) {
    if (!(f > 0) || !std::isfinite(f)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cost scenario fields must be positive");
    }
  }
}

double CostDirect(const CostScenario &s) {
  ValidateScenario(s);
  return s.n_docs * PerDoc(s);
}

double CostCode(const CostScenario &s) {
  ValidateScenario(s);
  return s.sample_size * PerDoc(s) + s.n_attributes * PerAttribute(s);
}

double CrossoverDocs(const CostScenario &s) {
  return CostCode(s) / PerDoc(s);
}

double CrossoverAttrs(const CostScenario &s) {
  ValidateScenario(s);
  const double slack = (s.n_docs - s.sample_size) * PerDoc(s);
  if (slack <= 0) return kInf;
  return slack / PerAttribute(s);
}

CostReport MakeCostReport(const CostScenario &s) {
  CostReport r;
  r.scenario = s;
  r.direct = CostDirect(s);
  r.code = CostCode(s);
  r.ratio = r.direct / r.code;
  r.crossover_docs = CrossoverDocs(s);
  r.crossover_attrs = CrossoverAttrs(s);
  return r;
}

std::string CostReportJson(const CostReport &r) {
  const CostScenario &s = r.scenario;
  nlohmann::ordered_json j;
  j["scenario"] = {
      {"n_docs", s.n_docs},
      {"tokens_per_doc", s.tokens_per_doc},
      {"n_attributes", s.n_attributes},
      {"sample_size", s.sample_size},
      {"candidates_per_attribute", s.candidates_per_attribute},
      {"prompt_overhead", s.prompt_overhead},
      {"completion_allowance", s.completion_allowance},
      {"snippet_tokens", s.snippet_tokens},
  };
  j["cost_direct"] = r.direct;
  j["cost_code"] = r.code;
  j["ratio"] = r.ratio;
  j["crossover_docs"] = Finite(r.crossover_docs);
  j["crossover_attrs"] = Finite(r.crossover_attrs);
  return j.dump(2) + "\n";
}

std::string CostReportText(const CostReport &r) {
  std::ostringstream out;
  auto row = [&](const char *name, double v) {
    out << fmt::format("{:<18} {:>16.1f}\n", name, v);
  };
  row("documents", r.scenario.n_docs);
  row("attributes", r.scenario.n_attributes);
  row("cost_direct", r.direct);
  row("cost_code", r.code);
  row("ratio", r.ratio);
  row("crossover_docs", r.crossover_docs);
  row("crossover_attrs", r.crossover_attrs);
  return out.str();
}

}  // namespace structview
