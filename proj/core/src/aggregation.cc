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

#include "structview/aggregation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <spdlog/spdlog.h>

#include "structview/metrics.h"
#include "structview/status.h"
#include "structview/text_util.h"

namespace structview {

double EstimateAbstentionPrior(const std::vector<std::string> &oracle) {
  if (oracle.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty evaluation sample");
  }
  size_t nonempty = 0;
  for (const auto &o : oracle) nonempty += Trim(o).empty() ? 0 : 1;
  return static_cast<double>(nonempty) / static_cast<double>(oracle.size());
}

std::string GuardOracleValue(std::string_view value,
                             std::string_view doc_text) {
  const std::string v = NormalizeValue(value);
  if (v.empty()) return "";
  if (NormalizeValue(doc_text).find(v) == std::string::npos) {
    spdlog::debug("oracle value '{}' not found in document; treated as empty",
                  value);
    return "";
  }
  return std::string(Trim(value));
}

double ScoreFunction(const std::vector<std::string> &outputs,
                     const std::vector<std::string> &oracle, double e,
                     double tau) {
  if (outputs.size() != oracle.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "outputs and oracle cover different documents");
  }
  const bool only_present = e > tau;
  double sum = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < oracle.size(); ++i) {
    if (only_present && Trim(oracle[i]).empty()) continue;
    sum += TextF1(outputs[i], oracle[i]);
    ++n;
  }
  if (n == 0) {
    spdlog::warn("no scorable documents (e={}, tau={}); score 0", e, tau);
    return 0.0;
  }
  return sum / static_cast<double>(n);
}

std::vector<size_t> FilterCandidates(
    const std::vector<std::pair<std::string, double>> &scored,
    double threshold, size_t cap) {
  std::vector<size_t> kept;
  for (size_t i = 0; i < scored.size(); ++i) {
    if (scored[i].second > threshold) kept.push_back(i);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](size_t a, size_t b) {
    if (scored[a].second != scored[b].second) {
      return scored[a].second > scored[b].second;
    }
    return scored[a].first < scored[b].first;
  });
  if (kept.size() > cap) kept.resize(cap);
  return kept;
}

VoteMatrix::VoteMatrix(size_t num_docs, size_t num_functions, double e,
                       double tau, size_t b)
    : num_docs_(num_docs),
      num_functions_(num_functions),
      e_(e),
      tau_(tau),
      b_(b),
      votes_(num_docs * num_functions, Vote::Abstain()) {
  if (b < 2) throw Error(ErrorCode::kInvalidArgument, "b must be at least 2");
}

VoteMatrix VoteMatrix::FromOutputs(
    const std::vector<std::vector<std::string>> &outputs, size_t num_docs,
    double e, double tau, size_t b) {
  VoteMatrix m(num_docs, outputs.size(), e, tau, b);
  const Vote empty = e > tau ? Vote::Abstain() : Vote::NoValue();
  for (size_t f = 0; f < outputs.size(); ++f) {
    if (outputs[f].size() != num_docs) {
      throw Error(ErrorCode::kInvalidArgument, "ragged vote matrix");
    }
    for (size_t d = 0; d < num_docs; ++d) {
      std::string_view v = Trim(outputs[f][d]);
      m.set(d, f, v.empty() ? empty : Vote::Value(std::string(v)));
    }
  }
  return m;
}

std::vector<Vote> VoteMatrix::row(size_t doc) const {
  return {votes_.begin() + static_cast<std::ptrdiff_t>(doc * num_functions_),
          votes_.begin() +
              static_cast<std::ptrdiff_t>((doc + 1) * num_functions_)};
}

BucketedDoc Bucket(const std::vector<Vote> &votes, size_t b) {
  if (b < 2) throw Error(ErrorCode::kInvalidArgument, "b must be at least 2");
  // NoValue is keyed "" with a marker byte so it cannot collide with text.
  struct Entry {
    ClassLabel label;
    size_t count = 0;
  };
  std::map<std::pair<int, std::string>, Entry> tally;
  for (const auto &v : votes) {
    if (v.kind == Vote::Kind::kAbstain) continue;
    const bool no_value = v.kind == Vote::Kind::kNoValue;
    auto &e = tally[{no_value ? 0 : 1, v.value}];
    e.label = {no_value ? ClassLabel::Kind::kNoValue : ClassLabel::Kind::kValue,
               v.value};
    ++e.count;
  }
  std::vector<Entry> ranked;
  for (auto &[key, e] : tally) ranked.push_back(std::move(e));
  // The map already iterates NoValue first, then values lexicographically.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Entry &x, const Entry &y) {
                     return x.count > y.count;
                   });
  if (ranked.size() > b) ranked.resize(b);

  BucketedDoc out;
  for (auto &e : ranked) {
    out.classes.push_back(e.label);
    out.counts.push_back(e.count);
  }
  while (out.classes.size() < b) {
    out.classes.push_back({ClassLabel::Kind::kPlaceholder,
                           "<placeholder-" +
                               std::to_string(out.classes.size()) + ">"});
    out.counts.push_back(0);
  }
  out.assignment.assign(votes.size(), -1);
  for (size_t f = 0; f < votes.size(); ++f) {
    const Vote &v = votes[f];
    if (v.kind == Vote::Kind::kAbstain) continue;
    const ClassLabel label{v.kind == Vote::Kind::kNoValue
                               ? ClassLabel::Kind::kNoValue
                               : ClassLabel::Kind::kValue,
                           v.value};
    for (size_t c = 0; c < out.classes.size(); ++c) {
      if (out.classes[c] == label) {
        out.assignment[f] = static_cast<int>(c);
        break;
      }
    }
  }
  return out;
}

namespace {

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

LabelModel FitLabelModel(const VoteMatrix &matrix) {
  const size_t m = matrix.num_functions();
  const size_t b = matrix.b();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  LabelModel model;
  model.b = b;
  model.accuracies.assign(m, kMinAccuracy);
  model.vote_rate.assign(m, 0.0);
  model.agreement.assign(m, std::vector<double>(m, nan));

  std::vector<std::vector<size_t>> both(m, std::vector<size_t>(m, 0));
  std::vector<std::vector<size_t>> same(m, std::vector<size_t>(m, 0));
  size_t informative_docs = 0;
  for (size_t d = 0; d < matrix.num_docs(); ++d) {
    const BucketedDoc bucketed = Bucket(matrix.row(d), b);
    const auto &a = bucketed.assignment;
    size_t voting = 0;
    for (size_t i = 0; i < m; ++i) {
      if (a[i] < 0) continue;
      ++voting;
      model.vote_rate[i] += 1.0;
      for (size_t j = i + 1; j < m; ++j) {
        if (a[j] < 0) continue;
        ++both[i][j];
        if (a[i] == a[j]) ++same[i][j];
      }
    }
    if (voting >= 2) ++informative_docs;
  }
  for (size_t i = 0; i < m; ++i) {
    if (matrix.num_docs() > 0) {
      model.vote_rate[i] /= static_cast<double>(matrix.num_docs());
    }
    model.agreement[i][i] = 1.0;
    for (size_t j = i + 1; j < m; ++j) {
      if (both[i][j] == 0) continue;
      const double p =
          static_cast<double>(same[i][j]) / static_cast<double>(both[i][j]);
      model.agreement[i][j] = model.agreement[j][i] = p;
    }
  }

  if (m < kMinLabelModelFunctions) {
    model.fallback_reason = "fewer than 3 functions";
    return model;
  }
  if (informative_docs < kMinLabelModelDocs) {
    model.fallback_reason = "fewer than 20 documents with two votes";
    return model;
  }

  const double bd = static_cast<double>(b);
  auto rescaled = [&](size_t i, size_t j) {
    return (bd * model.agreement[i][j] - 1.0) / (bd - 1.0);
  };
  size_t resolved = 0;
  for (size_t i = 0; i < m; ++i) {
    std::vector<double> roots;
    for (size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      for (size_t k = j + 1; k < m; ++k) {
        if (k == i) continue;
        if (std::isnan(model.agreement[i][j]) ||
            std::isnan(model.agreement[i][k]) ||
            std::isnan(model.agreement[j][k])) {
          continue;
        }
        const double denom = rescaled(j, k);
        if (denom == 0.0) continue;
        const double sq = rescaled(i, j) * rescaled(i, k) / denom;
        if (sq < 0.0) continue;
        roots.push_back(std::sqrt(sq));
      }
    }
    if (roots.empty()) {
      spdlog::debug("function {}: no usable triplet, accuracy at floor", i);
      continue;
    }
    ++resolved;
    const double x = Median(std::move(roots));
    const double a = (1.0 + (bd - 1.0) * x) / bd;
    model.accuracies[i] = std::clamp(a, kMinAccuracy, kMaxAccuracy);
  }
  if (resolved == 0) {
    model.fallback_reason = "no usable triplets";
    return model;
  }
  model.fitted = true;
  return model;
}

double VoteWeight(double accuracy, size_t b) {
  return std::log(accuracy * (static_cast<double>(b) - 1.0) /
                  (1.0 - accuracy));
}

std::vector<Prediction> Aggregate(const VoteMatrix &matrix,
                                  const LabelModel *model) {
  const bool weighted = model != nullptr && model->fitted;
  std::vector<double> weights(matrix.num_functions(), 1.0);
  if (weighted) {
    for (size_t f = 0; f < weights.size(); ++f) {
      weights[f] = VoteWeight(model->accuracies[f], model->b);
    }
  }
  std::vector<Prediction> out(matrix.num_docs());
  for (size_t d = 0; d < matrix.num_docs(); ++d) {
    const BucketedDoc bucketed = Bucket(matrix.row(d), matrix.b());
    std::vector<double> score(bucketed.classes.size(), 0.0);
    for (size_t f = 0; f < bucketed.assignment.size(); ++f) {
      const int c = bucketed.assignment[f];
      if (c >= 0) score[static_cast<size_t>(c)] += weights[f];
    }
    // Classes are in bucket order, so the first maximum wins ties.
    int best = -1;
    for (size_t c = 0; c < bucketed.classes.size(); ++c) {
      if (bucketed.counts[c] == 0 ||
          bucketed.classes[c].kind == ClassLabel::Kind::kPlaceholder) {
        continue;
      }
      if (best < 0 || score[c] > score[static_cast<size_t>(best)]) {
        best = static_cast<int>(c);
      }
    }
    if (best >= 0 &&
        bucketed.classes[static_cast<size_t>(best)].kind ==
            ClassLabel::Kind::kValue) {
      out[d] = {true, bucketed.classes[static_cast<size_t>(best)].value};
    }
  }
  return out;
}

}  // namespace structview
