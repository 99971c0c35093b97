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

#ifndef TRIPLESCORE_NATIONALITY_H_
#define TRIPLESCORE_NATIONALITY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triplescore/corpus.h"
#include "triplescore/embedding.h"
#include "triplescore/nationality_mapping.h"

namespace triplescore {

struct MappingResult {
  NationalityMapping mapping;
  std::vector<std::string> unmapped;  // no override and not in the vectors
  std::size_t from_overrides = 0;
  std::size_t from_analogy = 0;
};

// For each country c without an override, the demonym is the answer to
// "anchor_country is to c as anchor_demonym is to ?", i.e. the word nearest
// to vec(anchor_demonym) - vec(anchor_country) + vec(c). Overrides always
// take precedence.
MappingResult BuildMapping(const std::vector<std::string> &countries,
                           const EmbeddingModel &vectors,
                           std::string_view anchor_country,
                           std::string_view anchor_demonym,
                           const NationalityMapping &overrides = {});

// nationality (country token) -> occurrences of the country or its demonym.
using OccurrenceTable = std::map<std::string, std::int64_t>;

// Counts nationalities in documents. Text is lowercased, punctuation and
// digits are removed, stopwords dropped and multi-word country and demonym
// names joined before counting.
class OccurrenceCounter {
 public:
  OccurrenceCounter(std::vector<std::string> countries,
                    NationalityMapping mapping, PreprocessConfig config);

  // Every country of the list has an entry, zero if absent.
  OccurrenceTable Count(std::string_view document) const;

 private:
  std::vector<std::string> countries_;
  // token -> indices of the countries it counts toward
  std::map<std::string, std::vector<std::size_t>, std::less<>> targets_;
  Preprocessor preprocessor_;
};

OccurrenceTable CountOccurrences(std::string_view document,
                                 const std::vector<std::string> &countries,
                                 const NationalityMapping &mapping,
                                 const PreprocessConfig &config);

// round_half_up(7 * count / max_count); all zero when every count is zero.
std::map<std::string, int> NationalityScores(const OccurrenceTable &table);

// Source of per-person documents.
class DocumentProvider {
 public:
  virtual ~DocumentProvider() = default;
  // nullopt if the person has no document. Throws IoError if the document
  // exists but cannot be read.
  virtual std::optional<std::string> Fetch(std::string_view person) const = 0;
};

// One UTF-8 file per person, named by the person token.
class DirectoryDocumentProvider : public DocumentProvider {
 public:
  explicit DirectoryDocumentProvider(std::string directory);
  std::optional<std::string> Fetch(std::string_view person) const override;

 private:
  std::string directory_;
};

class InMemoryDocumentProvider : public DocumentProvider {
 public:
  void Add(std::string person, std::string document);
  // Fetch() for this person throws IoError.
  void AddFailure(std::string person);
  std::optional<std::string> Fetch(std::string_view person) const override;

 private:
  std::map<std::string, std::string, std::less<>> documents_;
  std::map<std::string, bool, std::less<>> failures_;
};

// person -> nationality -> score.
using NationalityTables = std::map<std::string, std::map<std::string, int>>;

struct NationalityLearnResult {
  NationalityTables tables;
  std::vector<std::string> absent;  // no document, or unreadable
  std::size_t read_failures = 0;
};

NationalityLearnResult LearnNationalities(const std::vector<std::string> &persons,
                                          const DocumentProvider &provider,
                                          const OccurrenceCounter &counter);

// `person<TAB>nationality<TAB>score` rows, sorted, every nationality of each
// scored person included.
std::string NationalityTablesToTsv(const NationalityTables &tables);
NationalityTables ParseNationalityTables(const std::vector<std::string> &lines);
void SaveNationalityTables(const NationalityTables &tables,
                           const std::string &path);
NationalityTables LoadNationalityTables(const std::string &path);

enum class NationalitySource { kLearned, kEmbedding, kUnknown };

struct NationalityPrediction {
  int score = 0;
  NationalitySource source = NationalitySource::kUnknown;
};

// Learned table when the person has one; otherwise the person's cosine to
// the nationality relative to the best non-negative cosine over all
// nationalities, scaled to 7. Negative cosines and unknown persons score 0.
NationalityPrediction PredictNationality(
    std::string_view person, std::string_view nationality,
    const NationalityTables &learned, const EmbeddingModel &model,
    const std::vector<std::string> &all_nationalities);

}  // namespace triplescore

#endif  // TRIPLESCORE_NATIONALITY_H_
