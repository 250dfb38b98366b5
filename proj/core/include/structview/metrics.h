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

#ifndef STRUCTVIEW_METRICS_H_
#define STRUCTVIEW_METRICS_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace structview {

// (document, attribute, value) triple scored by Pair F1.
struct Tuple {
  std::string doc_id;
  std::string attribute;
  std::string value;

  auto operator<=>(const Tuple &) const = default;
};

using TupleSet = std::set<Tuple>;

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set F1 over tuples after normalizing attributes (NormalizeAttribute) and
// values (lowercase, collapsed whitespace). Throws kInvalidArgument on an
// empty gold set.
PrecisionRecall PairF1(const TupleSet &pred, const TupleSet &gold);

// SQuAD answer normalization: lowercase, drop ASCII punctuation, drop the
// articles a/an/the, collapse whitespace.
std::string NormalizeAnswer(std::string_view text);

// Token-multiset F1 between normalized answers. Both empty scores 1, one
// empty scores 0.
double TextF1(std::string_view pred, std::string_view gold);

// Set F1 between the first k predicted attribute names and the gold names,
// both normalized. k larger than the prediction list uses all of it.
double F1AtK(const std::vector<std::string> &pred_ranked,
             const std::vector<std::string> &gold, size_t k);

}  // namespace structview

#endif  // STRUCTVIEW_METRICS_H_
