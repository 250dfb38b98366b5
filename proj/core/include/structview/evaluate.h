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

#ifndef STRUCTVIEW_EVALUATE_H_
#define STRUCTVIEW_EVALUATE_H_

#include <map>
#include <string>
#include <vector>

#include "structview/metrics.h"
#include "structview/table.h"

namespace structview {

// Non-empty cells of the first `k` columns as (doc, attribute, value).
TupleSet TableTuples(const Table &table, size_t k);

struct EvalReport {
  size_t k = 0;                    // number of gold attributes
  PrecisionRecall pair;            // over the first k predicted columns
  double f1_at_k = 0;
  // Mean Text F1 per gold attribute over gold rows; attributes with no
  // predicted column score 0.
  std::map<std::string, double> text_f1;
  std::vector<std::string> missing;  // gold attributes without a column
};

// `ranked` is the predicted schema in rank order; empty means the table's
// own column order.
EvalReport EvaluateTable(const Table &predicted, const Table &gold,
                         const std::vector<std::string> &ranked = {});

std::string EvalReportJson(const EvalReport &report);
std::string EvalReportText(const EvalReport &report);

}  // namespace structview

#endif  // STRUCTVIEW_EVALUATE_H_
