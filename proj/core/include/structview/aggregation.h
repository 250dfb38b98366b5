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

#ifndef STRUCTVIEW_AGGREGATION_H_
#define STRUCTVIEW_AGGREGATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace structview {

// Function aggregation: abstention prior, oracle scoring, filtering, per-
// document bucketing and a weak-supervision label model.
//
// The label model assumes conditionally independent voters with one
// accuracy a_j each and errors spread evenly over the other b-1 classes.
// Then two voters agree with probability
//
//   p_ij = a_i a_j + (1 - a_i)(1 - a_j) / (b - 1),
//
// and with x = (b a - 1) / (b - 1) the agreement rescales to
// (b p_ij - 1) / (b - 1) = x_i x_j. Any triplet (i, j, k) then gives
// x_i^2 = M_ij M_ik / M_jk; each x_i is the median over its triplets.

inline constexpr double kDefaultTau = 0.5;
inline constexpr size_t kDefaultBuckets = 5;
inline constexpr double kScoreThreshold = 0.5;
inline constexpr size_t kMaxRetained = 10;
inline constexpr double kMinAccuracy = 0.55;
inline constexpr double kMaxAccuracy = 0.99;
inline constexpr size_t kMinLabelModelFunctions = 3;
inline constexpr size_t kMinLabelModelDocs = 20;

struct Vote {
  enum class Kind { kValue, kAbstain, kNoValue };
  Kind kind = Kind::kAbstain;
  std::string value;

  static Vote Value(std::string v) { return {Kind::kValue, std::move(v)}; }
  static Vote Abstain() { return {Kind::kAbstain, {}}; }
  static Vote NoValue() { return {Kind::kNoValue, {}}; }

  bool operator==(const Vote &) const = default;
};

// Fraction of oracle answers that are non-empty. Requires at least one.
double EstimateAbstentionPrior(const std::vector<std::string> &oracle);

// Oracle answers that do not occur in the document (case-insensitive,
// whitespace-normalized) are demoted to empty.
std::string GuardOracleValue(std::string_view value,
                             std::string_view doc_text);

// Mean Text F1 of the function's outputs against the oracle. With e > tau
// only documents with a non-empty oracle count; otherwise all do, and an
// empty output against an empty oracle scores 1. Returns 0 when e > tau but
// no document qualifies.
double ScoreFunction(const std::vector<std::string> &outputs,
                     const std::vector<std::string> &oracle, double e,
                     double tau);

// Indices of candidates with score > threshold, best first (ties by id),
// at most `cap` of them.
std::vector<size_t> FilterCandidates(
    const std::vector<std::pair<std::string, double>> &scored,
    double threshold = kScoreThreshold, size_t cap = kMaxRetained);

class VoteMatrix {
 public:
  VoteMatrix(size_t num_docs, size_t num_functions, double e, double tau,
             size_t b);

  // outputs[f][d]; empty strings become Abstain when e > tau and NoValue
  // otherwise.
  static VoteMatrix FromOutputs(
      const std::vector<std::vector<std::string>> &outputs, size_t num_docs,
      double e, double tau, size_t b);

  size_t num_docs() const { return num_docs_; }
  size_t num_functions() const { return num_functions_; }
  double e() const { return e_; }
  double tau() const { return tau_; }
  size_t b() const { return b_; }

  const Vote &at(size_t doc, size_t fn) const {
    return votes_[doc * num_functions_ + fn];
  }
  void set(size_t doc, size_t fn, Vote v) {
    votes_[doc * num_functions_ + fn] = std::move(v);
  }
  std::vector<Vote> row(size_t doc) const;

 private:
  size_t num_docs_;
  size_t num_functions_;
  double e_;
  double tau_;
  size_t b_;
  std::vector<Vote> votes_;
};

struct ClassLabel {
  enum class Kind { kValue, kNoValue, kPlaceholder };
  Kind kind = Kind::kPlaceholder;
  std::string value;

  bool operator==(const ClassLabel &) const = default;
};

// Class space of one document.
struct BucketedDoc {
  std::vector<ClassLabel> classes;   // exactly b, most frequent first
  std::vector<size_t> counts;        // votes per class
  std::vector<int> assignment;       // per function: class index or -1
};

// Ranks the distinct non-abstain votes by count (ties lexicographic, with
// NoValue ordered as ""), keeps the top b as classes, turns votes outside
// them into abstentions and pads with placeholders.
BucketedDoc Bucket(const std::vector<Vote> &votes, size_t b);

struct LabelModel {
  size_t b = 0;
  std::vector<double> accuracies;               // clamped to [0.55, 0.99]
  std::vector<double> vote_rate;                // non-abstain fraction
  std::vector<std::vector<double>> agreement;   // p_ij; NaN without overlap
  bool fitted = false;                          // false: use majority vote
  std::string fallback_reason;
};

LabelModel FitLabelModel(const VoteMatrix &matrix);

// log(a (b - 1) / (1 - a))
double VoteWeight(double accuracy, size_t b);

struct Prediction {
  bool has_value = false;  // false: NoValue
  std::string value;

  bool operator==(const Prediction &) const = default;
};

// Weighted argmax per document with the model's accuracies, or plurality
// when `model` is null or unfitted. Ties fall back to bucket order.
std::vector<Prediction> Aggregate(const VoteMatrix &matrix,
                                  const LabelModel *model);

}  // namespace structview

#endif  // STRUCTVIEW_AGGREGATION_H_
