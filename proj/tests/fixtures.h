// Copyright 2026 The Triplescore Authors.
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

#ifndef TRIPLESCORE_TESTS_FIXTURES_H_
#define TRIPLESCORE_TESTS_FIXTURES_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "test_util.h"
#include "triplescore/corpus.h"
#include "triplescore/profession.h"
#include "triplescore/triples.h"

namespace triplescore::testing {

// Sentences alternate between {red, green, blue, color} and
// {cat, dog, pet, animal}, eight tokens each.
inline std::vector<TokenSentence> TwoClusterCorpus(int sentences,
                                                   std::uint64_t seed) {
  const std::vector<std::string> colors = {"red", "green", "blue", "color"};
  const std::vector<std::string> pets = {"cat", "dog", "pet", "animal"};
  std::mt19937_64 rng(seed);
  std::vector<TokenSentence> corpus;
  for (int s = 0; s < sentences; ++s) {
    const auto &cluster = s % 2 == 0 ? colors : pets;
    TokenSentence sentence;
    for (int i = 0; i < 8; ++i) sentence.tokens.push_back(cluster[rng() % 4]);
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

// Persons on the unit circle at a 0, b 30, c 85, d 150 and e 180 degrees.
// Only chain neighbors a-b (0.87), b-c (0.57), c-d (0.42) and d-e (0.87)
// clear the 0.4 threshold.
inline EmbeddingModel ChainModel() {
  std::vector<std::vector<double>> rows;
  for (double degrees : {0.0, 30.0, 85.0, 150.0, 180.0}) {
    double r = degrees * std::numbers::pi / 180.0;
    rows.push_back({std::cos(r), std::sin(r)});
  }
  return MakeModel({"a", "b", "c", "d", "e"}, rows);
}

// Seeds a and e; the last row falls in the held-out 30%.
inline std::vector<Triple> ChainTraining() {
  return {{"a", "politician", 6},
          {"a", "lawyer", 3},
          {"e", "politician", 1},
          {"e", "singer", 5},
          {"held", "out", 2}};
}

// Hand simulation of the chain. Round 1: a -> b and e -> d. Round 2: c
// hears politician 6 and lawyer 3 from b (cos 55 deg), politician 1 and
// singer 5 from d (cos 65 deg); politician = (6 cos55 + cos65) /
// (cos55 + cos65) = 3.88 -> 4. Round 3 finds nobody new.
inline KnowledgeState ChainExpectedState() {
  KnowledgeState s;
  s.Add("a", "politician", 6, Provenance::kGroundTruth);
  s.Add("a", "lawyer", 3, Provenance::kGroundTruth);
  s.Add("e", "politician", 1, Provenance::kGroundTruth);
  s.Add("e", "singer", 5, Provenance::kGroundTruth);
  s.Add("b", "politician", 6, Provenance::kPropagated);
  s.Add("b", "lawyer", 3, Provenance::kPropagated);
  s.Add("d", "politician", 1, Provenance::kPropagated);
  s.Add("d", "singer", 5, Provenance::kPropagated);
  s.Add("c", "politician", 4, Provenance::kPropagated);
  s.Add("c", "lawyer", 3, Provenance::kPropagated);
  s.Add("c", "singer", 5, Provenance::kPropagated);
  return s;
}

inline const std::vector<std::size_t> kChainPersonCounts = {2, 4, 5, 5};
constexpr int kChainIterations = 3;

// Weighted mean computed in long double, independent of the library.
inline double WeightedMeanOracle(const std::vector<ScoredEvidence> &evidence) {
  long double num = 0, den = 0;
  for (const auto &e : evidence) {
    num += static_cast<long double>(e.rel_score) * e.sim_score;
    den += e.sim_score;
  }
  return static_cast<double>(num / den);
}

// floor(7 c / m + 1/2), or 0 when every count is zero.
inline int ScaledScoreOracle(std::int64_t count, std::int64_t max) {
  if (max == 0) return 0;
  return static_cast<int>(std::floor(7.0 * count / max + 0.5));
}

}  // namespace triplescore::testing

#endif  // TRIPLESCORE_TESTS_FIXTURES_H_
