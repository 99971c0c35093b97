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

#ifndef TRIPLESCORE_TRIPLES_H_
#define TRIPLESCORE_TRIPLES_H_

#include <optional>
#include <string>
#include <vector>

#include "triplescore/text.h"

namespace triplescore {

// (person, relation value, optional 0-7 relevance score). Person and value
// are normalized tokens that match embedding vocabulary keys.
struct Triple {
  std::string person;
  std::string value;
  std::optional<int> score;

  bool operator==(const Triple &other) const = default;
};

constexpr int kMinScore = 0;
constexpr int kMaxScore = 7;

// `person<TAB>value<TAB>score`. Throws ParseError naming the line for a wrong
// column count or a score outside [0, 7]. Blank lines are skipped.
std::vector<Triple> ParseTrainLines(const std::vector<std::string> &lines);
std::vector<Triple> ReadTrainFile(const std::string &path);

// `person<TAB>value`.
std::vector<Triple> ParseKbLines(const std::vector<std::string> &lines);
std::vector<Triple> ReadKbFile(const std::string &path);

// Query rows for prediction: `.kb` rows, or `.train` rows whose score is
// ignored.
std::vector<Triple> ReadQueryFile(const std::string &path);

// One value per line (persons, professions, nationalities), normalized.
std::vector<std::string> ReadValueList(const std::string &path);

// First ceil(fraction * n) rows in file order, and the rest.
struct TripleSplit {
  std::vector<Triple> head;
  std::vector<Triple> tail;
};
TripleSplit SplitTriples(const std::vector<Triple> &triples, double fraction);

// `person<TAB>value<TAB>score` per row, in the given order. Rows without a
// score are an error.
std::string FormatScoredTriples(const std::vector<Triple> &triples);

}  // namespace triplescore

#endif  // TRIPLESCORE_TRIPLES_H_
