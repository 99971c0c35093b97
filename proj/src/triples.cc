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

#include "triplescore/triples.h"

#include <algorithm>
#include <cmath>

#include "triplescore/errors.h"

namespace triplescore {
namespace {

std::string Normalize(const std::string &field) {
  static const CharSet punctuation = CharSet::DefaultPunctuation();
  return NormalizeTerm(field, punctuation);
}

int ParseScore(std::string_view text, std::size_t line) {
  std::string_view trimmed = Trim(text);
  if (trimmed.empty() || trimmed.size() > 2) {
    throw ParseError("invalid score '" + std::string(text) + "'", line);
  }
  int value = 0;
  for (char c : trimmed) {
    if (c < '0' || c > '9') {
      throw ParseError("invalid score '" + std::string(text) + "'", line);
    }
    value = value * 10 + (c - '0');
  }
  if (value < kMinScore || value > kMaxScore) {
    throw ParseError("score " + std::to_string(value) + " outside [0, 7]", line);
  }
  return value;
}

std::vector<Triple> ParseRows(const std::vector<std::string> &lines,
                              std::size_t min_columns, std::size_t max_columns,
                              bool keep_score) {
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    if (Trim(lines[i]).empty()) continue;
    auto fields = SplitFields(lines[i], '\t');
    if (fields.size() < min_columns || fields.size() > max_columns) {
      throw ParseError("expected " + std::to_string(min_columns) +
                           (min_columns == max_columns
                                ? std::string()
                                : " or " + std::to_string(max_columns)) +
                           " tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line);
    }
    Triple triple;
    triple.person = Normalize(fields[0]);
    triple.value = Normalize(fields[1]);
    if (triple.person.empty() || triple.value.empty()) {
      throw ParseError("empty person or value", line);
    }
    if (fields.size() == 3) {
      int score = ParseScore(fields[2], line);
      if (keep_score) triple.score = score;
    }
    triples.push_back(std::move(triple));
  }
  return triples;
}

}  // namespace

std::vector<Triple> ParseTrainLines(const std::vector<std::string> &lines) {
  return ParseRows(lines, 3, 3, true);
}

std::vector<Triple> ReadTrainFile(const std::string &path) {
  return ParseTrainLines(ReadLines(path));
}

std::vector<Triple> ParseKbLines(const std::vector<std::string> &lines) {
  return ParseRows(lines, 2, 2, false);
}

std::vector<Triple> ReadKbFile(const std::string &path) {
  return ParseKbLines(ReadLines(path));
}

std::vector<Triple> ReadQueryFile(const std::string &path) {
  return ParseRows(ReadLines(path), 2, 3, false);
}

std::vector<std::string> ReadValueList(const std::string &path) {
  std::vector<std::string> values;
  for (const std::string &line : ReadLines(path)) {
    std::string value = Normalize(line);
    if (!value.empty()) values.push_back(std::move(value));
  }
  return values;
}

TripleSplit SplitTriples(const std::vector<Triple> &triples, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("split fraction must be in (0, 1]");
  }
  // The small slack keeps 0.7 * 10 at 7 despite binary rounding.
  auto head = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(triples.size()) - 1e-9));
  head = std::min(head, triples.size());
  TripleSplit split;
  split.head.assign(triples.begin(),
                    triples.begin() + static_cast<std::ptrdiff_t>(head));
  split.tail.assign(triples.begin() + static_cast<std::ptrdiff_t>(head),
                    triples.end());
  return split;
}

std::string FormatScoredTriples(const std::vector<Triple> &triples) {
  std::string out;
  for (const Triple &t : triples) {
    if (!t.score) throw ContractError("triple without score: " + t.person);
    out += t.person;
    out += '\t';
    out += t.value;
    out += '\t';
    out += std::to_string(*t.score);
    out += '\n';
  }
  return out;
}

}  // namespace triplescore
