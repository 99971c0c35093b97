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

#include "triplescore/nationality.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "triplescore/errors.h"
#include "triplescore/triples.h"

namespace triplescore {

MappingResult BuildMapping(const std::vector<std::string> &countries,
                           const EmbeddingModel &vectors,
                           std::string_view anchor_country,
                           std::string_view anchor_demonym,
                           const NationalityMapping &overrides) {
  MappingResult result;
  const bool anchors_known =
      vectors.Contains(anchor_country) && vectors.Contains(anchor_demonym);
  for (const std::string &country : countries) {
    if (auto demonym = overrides.Demonym(country)) {
      result.mapping.Set(country, std::string(*demonym));
      ++result.from_overrides;
      continue;
    }
    if (!anchors_known || !vectors.Contains(country) ||
        country == anchor_country || country == anchor_demonym) {
      result.unmapped.push_back(country);
      continue;
    }
    try {
      SimilarityHit hit = vectors.Analogy(anchor_demonym, anchor_country, country);
      result.mapping.Set(country, hit.word);
      ++result.from_analogy;
    } catch (const DegenerateInputError &) {
      result.unmapped.push_back(country);
    }
  }
  return result;
}

// Occurrence counting.

namespace {

PreprocessConfig CountingConfig(PreprocessConfig config,
                                const std::vector<std::string> &countries,
                                const NationalityMapping &mapping) {
  config.strip_digits = true;
  for (const std::string &country : countries) {
    config.multiword_terms.push_back(country);
    if (auto demonym = mapping.Demonym(country)) {
      config.multiword_terms.emplace_back(*demonym);
    }
  }
  return config;
}

}  // namespace

OccurrenceCounter::OccurrenceCounter(std::vector<std::string> countries,
                                     NationalityMapping mapping,
                                     PreprocessConfig config)
    : countries_(std::move(countries)),
      preprocessor_(CountingConfig(std::move(config), countries_, mapping)) {
  for (std::size_t i = 0; i < countries_.size(); ++i) {
    targets_[countries_[i]].push_back(i);
    if (auto demonym = mapping.Demonym(countries_[i])) {
      auto &indices = targets_[std::string(*demonym)];
      if (std::find(indices.begin(), indices.end(), i) == indices.end()) {
        indices.push_back(i);
      }
    }
  }
}

OccurrenceTable OccurrenceCounter::Count(std::string_view document) const {
  std::vector<std::int64_t> counts(countries_.size(), 0);
  for (const std::string &token : preprocessor_.Tokenize(document)) {
    auto it = targets_.find(token);
    if (it == targets_.end()) continue;
    for (std::size_t i : it->second) ++counts[i];
  }
  OccurrenceTable table;
  for (std::size_t i = 0; i < countries_.size(); ++i) {
    table[countries_[i]] = counts[i];
  }
  return table;
}

OccurrenceTable CountOccurrences(std::string_view document,
                                 const std::vector<std::string> &countries,
                                 const NationalityMapping &mapping,
                                 const PreprocessConfig &config) {
  return OccurrenceCounter(countries, mapping, config).Count(document);
}

std::map<std::string, int> NationalityScores(const OccurrenceTable &table) {
  std::int64_t max_count = 0;
  for (const auto &[nationality, count] : table) {
    if (count < 0) throw ContractError("negative occurrence count");
    max_count = std::max(max_count, count);
  }
  std::map<std::string, int> scores;
  for (const auto &[nationality, count] : table) {
    scores[nationality] =
        max_count == 0
            ? 0
            : RoundHalfAwayFromZero(kMaxScore * static_cast<double>(count) /
                                    static_cast<double>(max_count));
  }
  return scores;
}

// Document providers.

DirectoryDocumentProvider::DirectoryDocumentProvider(std::string directory)
    : directory_(std::move(directory)) {}

std::optional<std::string> DirectoryDocumentProvider::Fetch(
    std::string_view person) const {
  if (person.empty() || person.find('/') != std::string_view::npos ||
      person == "." || person == "..") {
    return std::nullopt;
  }
  std::filesystem::path path = std::filesystem::path(directory_) / person;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream contents;
  contents << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return contents.str();
}

void InMemoryDocumentProvider::Add(std::string person, std::string document) {
  documents_.insert_or_assign(std::move(person), std::move(document));
}

void InMemoryDocumentProvider::AddFailure(std::string person) {
  failures_.insert_or_assign(std::move(person), true);
}

std::optional<std::string> InMemoryDocumentProvider::Fetch(
    std::string_view person) const {
  if (failures_.find(person) != failures_.end()) {
    throw IoError("simulated read failure for " + std::string(person));
  }
  auto it = documents_.find(person);
  if (it == documents_.end()) return std::nullopt;
  return it->second;
}

// Learning.

NationalityLearnResult LearnNationalities(const std::vector<std::string> &persons,
                                          const DocumentProvider &provider,
                                          const OccurrenceCounter &counter) {
  NationalityLearnResult result;
  for (const std::string &person : persons) {
    if (result.tables.count(person) > 0) continue;
    std::optional<std::string> document;
    try {
      document = provider.Fetch(person);
    } catch (const IoError &) {
      ++result.read_failures;
    }
    if (!document) {
      if (std::find(result.absent.begin(), result.absent.end(), person) ==
          result.absent.end()) {
        result.absent.push_back(person);
      }
      continue;
    }
    result.tables[person] = NationalityScores(counter.Count(*document));
  }
  return result;
}

std::string NationalityTablesToTsv(const NationalityTables &tables) {
  std::string out;
  for (const auto &[person, scores] : tables) {
    for (const auto &[nationality, score] : scores) {
      out += person;
      out += '\t';
      out += nationality;
      out += '\t';
      out += std::to_string(score);
      out += '\n';
    }
  }
  return out;
}

NationalityTables ParseNationalityTables(const std::vector<std::string> &lines) {
  NationalityTables tables;
  for (const Triple &row : ParseTrainLines(lines)) {
    if (!tables[row.person].emplace(row.value, *row.score).second) {
      throw ParseError("duplicate row for " + row.person + "/" + row.value);
    }
  }
  return tables;
}

void SaveNationalityTables(const NationalityTables &tables,
                           const std::string &path) {
  WriteFile(path, NationalityTablesToTsv(tables));
}

NationalityTables LoadNationalityTables(const std::string &path) {
  return ParseNationalityTables(ReadLines(path));
}

// Prediction.

NationalityPrediction PredictNationality(
    std::string_view person, std::string_view nationality,
    const NationalityTables &learned, const EmbeddingModel &model,
    const std::vector<std::string> &all_nationalities) {
  if (auto it = learned.find(std::string(person)); it != learned.end()) {
    auto score = it->second.find(std::string(nationality));
    return {score == it->second.end() ? 0 : score->second,
            NationalitySource::kLearned};
  }
  if (!model.Contains(person)) return {0, NationalitySource::kUnknown};

  const auto person_vector = model.Vector(person);
  auto similarity = [&](std::string_view token) {
    if (!model.Contains(token)) return 0.0;
    try {
      return Cosine(person_vector, model.Vector(token));
    } catch (const DegenerateInputError &) {
      return 0.0;
    }
  };

  double best = 0.0;
  for (const std::string &n : all_nationalities) {
    best = std::max(best, similarity(n));
  }
  if (!(best > 0.0)) return {0, NationalitySource::kUnknown};

  const double target = similarity(nationality);
  if (target < 0.0) return {0, NationalitySource::kEmbedding};
  int score = RoundHalfAwayFromZero(kMaxScore * target / best);
  return {std::clamp(score, kMinScore, kMaxScore), NationalitySource::kEmbedding};
}

}  // namespace triplescore
