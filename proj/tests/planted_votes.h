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

#ifndef STRUCTVIEW_TESTS_PLANTED_VOTES_H_
#define STRUCTVIEW_TESTS_PLANTED_VOTES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "structview/aggregation.h"

namespace structview::testing {

// Votes drawn from the label model's own generative story: a uniform true
// class out of b, and voter j right with probability a_j, otherwise
// uniformly wrong.
struct PlantedVotes {
  VoteMatrix matrix;
  std::vector<std::string> truth;
};

inline double Uniform(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline size_t Below(std::mt19937_64 &rng, size_t n) {
  return static_cast<size_t>(Uniform(rng) * static_cast<double>(n));
}

inline PlantedVotes PlantVotes(const std::vector<double> &accuracies,
                               size_t b, size_t docs, uint64_t seed,
                               double abstain_rate = 0.0) {
  std::mt19937_64 rng(seed);
  PlantedVotes out{VoteMatrix(docs, accuracies.size(), 1.0, 0.5, b), {}};
  for (size_t d = 0; d < docs; ++d) {
    const size_t y = Below(rng, b);
    out.truth.push_back("c" + std::to_string(y));
    for (size_t j = 0; j < accuracies.size(); ++j) {
      if (Uniform(rng) < abstain_rate) continue;
      size_t v = y;
      if (Uniform(rng) >= accuracies[j]) {
        v = Below(rng, b - 1);
        if (v >= y) ++v;
      }
      out.matrix.set(d, j, Vote::Value("c" + std::to_string(v)));
    }
  }
  return out;
}

inline double DocAccuracy(const std::vector<Prediction> &pred,
                          const std::vector<std::string> &truth) {
  size_t right = 0;
  for (size_t d = 0; d < pred.size(); ++d) {
    right += pred[d].has_value && pred[d].value == truth[d];
  }
  return static_cast<double>(right) / static_cast<double>(pred.size());
}

}  // namespace structview::testing

#endif  // STRUCTVIEW_TESTS_PLANTED_VOTES_H_
