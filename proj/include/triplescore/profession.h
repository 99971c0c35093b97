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

#ifndef TRIPLESCORE_PROFESSION_H_
#define TRIPLESCORE_PROFESSION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triplescore/embedding.h"
#include "triplescore/triples.h"

namespace triplescore {

// One propagated observation: a relevance score seen on a neighbor, weighted
// by the neighbor's similarity.
struct ScoredEvidence {
  double rel_score = 0.0;  // [0, 7]
  double sim_score = 0.0;  // (0, 1]
};

// Similarity-weighted mean of the evidence before rounding.
struct WeightedScore {
  double weight_sum = 0.0;  // sum of sim_score
  double value = 0.0;       // sum(rel * sim) / weight_sum
};

// Throws ContractError for empty evidence or a non-positive similarity.
WeightedScore WeightedMeanScore(std::span<const ScoredEvidence> evidence);

// WeightedMeanScore rounded half away from zero, clamped to [0, 7].
int NormalizeScore(std::span<const ScoredEvidence> evidence);

enum class Provenance { kGroundTruth, kPropagated };

std::string_view ProvenanceName(Provenance provenance);

struct ProfessionScore {
  int score = 0;
  Provenance provenance = Provenance::kPropagated;

  bool operator==(const ProfessionScore &other) const = default;
};

// person -> profession -> integer score. Iteration order is sorted.
class KnowledgeState {
 public:
  using ProfessionMap = std::map<std::string, ProfessionScore, std::less<>>;
  using PersonMap = std::map<std::string, ProfessionMap, std::less<>>;

  // Throws ContractError for a score outside [0, 7]. Existing entries are
  // kept; returns false if the entry already existed.
  bool Add(std::string person, std::string profession, int score,
           Provenance provenance);

  const ProfessionMap *Find(std::string_view person) const;
  std::optional<ProfessionScore> Find(std::string_view person,
                                      std::string_view profession) const;
  bool ContainsPerson(std::string_view person) const {
    return persons_.find(person) != persons_.end();
  }

  std::size_t person_count() const { return persons_.size(); }
  std::size_t entry_count() const;
  const PersonMap &persons() const { return persons_; }

  // Adds every person of `other` that is not present yet, with all of that
  // person's professions. Existing persons are left untouched. Returns the
  // number of persons added.
  std::size_t MergeNewPersons(const KnowledgeState &other);

  // `person<TAB>profession<TAB>score<TAB>provenance`, sorted.
  std::string ToTsv() const;
  static KnowledgeState FromTsv(const std::vector<std::string> &lines);
  void Save(const std::string &path) const;
  static KnowledgeState Load(const std::string &path);

  bool operator==(const KnowledgeState &other) const = default;

 private:
  PersonMap persons_;
};

// person -> profession -> accumulated evidence.
using EvidenceState =
    std::map<std::string, std::map<std::string, std::vector<ScoredEvidence>>>;

struct PropagationConfig {
  int topn = 10;
  double threshold = 0.4;
  int max_iterations = 50;

  void Validate() const;
};

struct PropagationResult {
  KnowledgeState state;  // normalized, all entries kPropagated
  EvidenceState evidence;
  std::vector<std::string> skipped;  // source persons without a vector
};

// Sends every person's professions to their topn most similar words with
// similarity >= threshold, then normalizes the evidence each receiver
// accumulated. `neighbors` restricts which vocabulary entries may receive
// evidence (typically the known persons).
PropagationResult ScorePropagation(const KnowledgeState &overall,
                                   const EmbeddingModel &model,
                                   const PropagationConfig &config,
                                   const CandidateFilter &neighbors = {});

struct LearnResult {
  KnowledgeState state;
  int iterations = 0;
  // Distinct persons before the first iteration and after each iteration.
  std::vector<std::size_t> person_counts;
  std::vector<std::string> skipped;  // persons never found in the model
};

// Seeds the state with the first ceil(seed_fraction * n) training triples
// as ground truth, then propagates and merges until an iteration discovers
// no new person or max_iterations is reached. Throws ConfigError for an
// empty training set and ContractError for unscored triples.
LearnResult Learn(const std::vector<Triple> &train, const EmbeddingModel &model,
                  const PropagationConfig &config, double seed_fraction = 0.7,
                  const CandidateFilter &neighbors = {});

enum class PredictionSource {
  kState,
  kNeighbors,
  kSimilarProfessions,
  kDefault,
};

struct ProfessionPrediction {
  int score = 0;
  PredictionSource source = PredictionSource::kDefault;
};

struct PredictionOptions {
  int default_score = 2;
  int similar_professions = 5;
  // Candidate restriction for the person's neighbors.
  CandidateFilter neighbor_filter;
  // Candidate restriction for the professions similar to the target.
  CandidateFilter profession_filter;
};

// 1. stored score; 2. similarity-weighted score of the person's neighbors
// that have this profession; 3. number of professions similar to the target
// whose similarity to the person is >= threshold; 4. default score.
ProfessionPrediction PredictProfession(std::string_view person,
                                       std::string_view profession,
                                       const KnowledgeState &state,
                                       const EmbeddingModel &model,
                                       const PropagationConfig &config,
                                       const PredictionOptions &options = {});

}  // namespace triplescore

#endif  // TRIPLESCORE_PROFESSION_H_
