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

#ifndef STRUCTVIEW_COST_MODEL_H_
#define STRUCTVIEW_COST_MODEL_H_

#include <string>

namespace structview {

// Token-cost model for direct extraction versus code synthesis. Direct mode
// pays for every document; code mode pays for the schema sample, candidate
// generation over snippets and the oracle on the sample, none of which
// depend on the number of documents.
//
// The overhead and allowance defaults are calibration constants, not
// measured values.
struct CostScenario {
  double n_docs = 10000;
  double tokens_per_doc = 10000;
  double n_attributes = 10;
  double sample_size = 10;               // k
  double candidates_per_attribute = 10;
  double prompt_overhead = 1500;         // template + demonstrations
  double completion_allowance = 500;
  double snippet_tokens = 250;           // keyword-search window
};

// Throws kInvalidArgument unless every field is positive.
void ValidateScenario(const CostScenario &s);

double CostDirect(const CostScenario &s);
double CostCode(const CostScenario &s);

// Solve CostDirect = CostCode for n_docs (resp. n_attributes), holding the
// rest of the scenario fixed. +inf when no positive solution exists.
double CrossoverDocs(const CostScenario &s);
double CrossoverAttrs(const CostScenario &s);

struct CostReport {
  CostScenario scenario;
  double direct = 0;
  double code = 0;
  double ratio = 0;  // direct / code
  double crossover_docs = 0;
  double crossover_attrs = 0;
};

CostReport MakeCostReport(const CostScenario &s);
std::string CostReportJson(const CostReport &r);
std::string CostReportText(const CostReport &r);

}  // namespace structview

#endif  // STRUCTVIEW_COST_MODEL_H_
