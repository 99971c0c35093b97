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

#include "triplescore/profession.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "triplescore/errors.h"

namespace triplescore {

WeightedScore WeightedMeanScore(std::span<const ScoredEvidence> evidence) {
  if (evidence.empty()) throw ContractError("normalizing empty evidence");
  WeightedScore result;
  double weighted = 0.0;
  for (const ScoredEvidence &e : evidence) {
    if (!(e.sim_score > 0.0)) {
      throw ContractError("evidence similarity must be positive");
    }
    weighted += e.rel_score * e.sim_score;
    result.weight_sum += e.sim_score;
  }
  result.value = weighted / result.weight_sum;
  return result;
}

int NormalizeScore(std::span<const ScoredEvidence> evidence) {
  int rounded = RoundHalfAwayFromZero(WeightedMeanScore(evidence).value);
  return std::clamp(rounded, kMinScore, kMaxScore);
}

std::string_view ProvenanceName(Provenance provenance) {
  return provenance == Provenance::kGroundTruth ? "ground_truth" : "propagated";
}

// KnowledgeState.

bool KnowledgeState::Add(std::string person, std::string profession, int score,
                         Provenance provenance) {
  if (score < kMinScore || score > kMaxScore) {
    throw ContractError("score " + std::to_string(score) + " outside [0, 7]");
  }
  auto &professions = persons_[std::move(person)];
  return professions.emplace(std::move(profession),
                             ProfessionScore{score, provenance})
      .second;
}

const KnowledgeState::ProfessionMap *KnowledgeState::Find(
    std::string_view person) const {
  auto it = persons_.find(person);
  return it == persons_.end() ? nullptr : &it->second;
}

std::optional<ProfessionScore> KnowledgeState::Find(
    std::string_view person, std::string_view profession) const {
  const ProfessionMap *professions = Find(person);
  if (professions == nullptr) return std::nullopt;
  auto it = professions->find(profession);
  if (it == professions->end()) return std::nullopt;
  return it->second;
}

std::size_t KnowledgeState::entry_count() const {
  std::size_t n = 0;
  for (const auto &[person, professions] : persons_) n += professions.size();
  return n;
}

std::size_t KnowledgeState::MergeNewPersons(const KnowledgeState &other) {
  std::size_t added = 0;
  for (const auto &[person, professions] : other.persons_) {
    if (persons_.emplace(person, professions).second) ++added;
  }
  return added;
}

std::string KnowledgeState::ToTsv() const {
  std::string out;
  for (const auto &[person, professions] : persons_) {
    for (const auto &[profession, entry] : professions) {
      out += person;
      out += '\t';
      out += profession;
      out += '\t';
      out += std::to_string(entry.score);
      out += '\t';
      out += ProvenanceName(entry.provenance);
      out += '\n';
    }
  }
  return out;
}

KnowledgeState KnowledgeState::FromTsv(const std::vector<std::string> &lines) {
  KnowledgeState state;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    auto fields = SplitFields(lines[i], '\t');
    if (fields.size() != 4) {
      throw ParseError("expected person, profession, score, provenance", i + 1);
    }
    auto rows = ParseTrainLines({fields[0] + '\t' + fields[1] + '\t' + fields[2]});
    Provenance provenance;
    if (fields[3] == "ground_truth") {
      provenance = Provenance::kGroundTruth;
    } else if (fields[3] == "propagated") {
      provenance = Provenance::kPropagated;
    } else {
      throw ParseError("unknown provenance '" + fields[3] + "'", i + 1);
    }
    if (!state.Add(rows[0].person, rows[0].value, *rows[0].score, provenance)) {
      throw ParseError("duplicate entry", i + 1);
    }
  }
  return state;
}

void KnowledgeState::Save(const std::string &path) const {
  WriteFile(path, ToTsv());
}

KnowledgeState KnowledgeState::Load(const std::string &path) {
  try {
    return FromTsv(ReadLines(path));
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Propagation.

void PropagationConfig::Validate() const {
  if (topn < 1) throw ConfigError("topn must be >= 1");
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw ConfigError("threshold must be in [0, 1)");
  }
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

PropagationResult ScorePropagation(const KnowledgeState &overall,
                                   const EmbeddingModel &model,
                                   const PropagationConfig &config,
                                   const CandidateFilter &neighbors) {
  config.Validate();
  PropagationResult result;
  for (const auto &[person, professions] : overall.persons()) {
    if (!model.Contains(person)) {
      result.skipped.push_back(person);
      continue;
    }
    for (const SimilarityHit &hit :
         model.MostSimilar({person}, config.topn, neighbors)) {
      if (hit.score < config.threshold || !(hit.score > 0.0)) continue;
      auto &received = result.evidence[hit.word];
      for (const auto &[profession, entry] : professions) {
        received[profession].push_back(
            {static_cast<double>(entry.score), hit.score});
      }
    }
  }
  for (const auto &[person, professions] : result.evidence) {
    for (const auto &[profession, evidence] : professions) {
      result.state.Add(person, profession, NormalizeScore(evidence),
                       Provenance::kPropagated);
    }
  }
  return result;
}

LearnResult Learn(const std::vector<Triple> &train, const EmbeddingModel &model,
                  const PropagationConfig &config, double seed_fraction,
                  const CandidateFilter &neighbors) {
  config.Validate();
  if (train.empty()) throw ConfigError("empty profession training set");

  LearnResult result;
  for (const Triple &triple : SplitTriples(train, seed_fraction).head) {
    if (!triple.score) {
      throw ContractError("training triple without score: " + triple.person);
    }
    result.state.Add(triple.person, triple.value, *triple.score,
                     Provenance::kGroundTruth);
  }

  std::set<std::string> skipped;
  std::size_t before = 0;
  std::size_t after = result.state.person_count();
  result.person_counts.push_back(after);
  while (after > before && result.iterations < config.max_iterations) {
    before = result.state.person_count();
    PropagationResult propagated =
        ScorePropagation(result.state, model, config, neighbors);
    skipped.insert(propagated.skipped.begin(), propagated.skipped.end());
    result.state.MergeNewPersons(propagated.state);
    after = result.state.person_count();
    result.person_counts.push_back(after);
    ++result.iterations;
  }
  result.skipped.assign(skipped.begin(), skipped.end());
  return result;
}

// Prediction.

ProfessionPrediction PredictProfession(std::string_view person,
                                       std::string_view profession,
                                       const KnowledgeState &state,
                                       const EmbeddingModel &model,
                                       const PropagationConfig &config,
                                       const PredictionOptions &options) {
  if (auto stored = state.Find(person, profession)) {
    return {stored->score, PredictionSource::kState};
  }
  if (!model.Contains(person)) {
    return {options.default_score, PredictionSource::kDefault};
  }

  const std::string person_token(person);
  std::vector<ScoredEvidence> evidence;
  for (const SimilarityHit &hit : model.MostSimilar(
           {person_token}, config.topn, options.neighbor_filter)) {
    if (!(hit.score > 0.0)) continue;
    if (auto stored = state.Find(hit.word, profession)) {
      evidence.push_back({static_cast<double>(stored->score), hit.score});
    }
  }
  if (!evidence.empty()) {
    return {NormalizeScore(evidence), PredictionSource::kNeighbors};
  }

  if (!model.Contains(profession)) {
    return {options.default_score, PredictionSource::kDefault};
  }
  const auto person_vector = model.Vector(person);
  int count = 0;
  for (const SimilarityHit &hit :
       model.MostSimilar({std::string(profession)}, options.similar_professions,
                         options.profession_filter)) {
    try {
      if (Cosine(person_vector, model.Vector(hit.index)) >= config.threshold) {
        ++count;
      }
    } catch (const DegenerateInputError &) {
      // Zero vectors have no direction and count as dissimilar.
    }
  }
  return {std::clamp(count, kMinScore, kMaxScore),
          PredictionSource::kSimilarProfessions};
}

}  // namespace triplescore
