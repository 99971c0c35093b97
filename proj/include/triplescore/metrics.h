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

#ifndef TRIPLESCORE_METRICS_H_
#define TRIPLESCORE_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace triplescore {

// A predicted and a true relevance score for one (subject, object) triple.
// Scores are usually integers in [0, 7]; real values are accepted for
// diagnostics.
struct ScoredPair {
  std::string subject;
  std::string object;
  double predicted = 0.0;
  double truth = 0.0;
};

// Fraction of pairs with |predicted - truth| <= 2.
double Accuracy(std::span<const ScoredPair> pairs);

// Mean |predicted - truth|.
double AverageScoreDifference(std::span<const ScoredPair> pairs);

// Per-subject transposition rate, averaged over subjects. Within a subject,
// every unordered pair of triples with different truths counts 1 if the
// predictions order it the other way, 0.5 if the predictions tie, 0
// otherwise. Subjects without such a pair are skipped. A distance: 0 is a
// perfect ranking. Throws DegenerateInputError if no subject is evaluable.
double KendallTau(std::span<const ScoredPair> pairs);

// Number of subjects KendallTau averages over.
std::size_t EvaluableSubjects(std::span<const ScoredPair> pairs);

// clamp(score, 2, 5). Throws ContractError outside [0, 7].
int Truncate2To5(int score);

struct EvaluationReport {
  double accuracy = 0.0;
  double average_score_difference = 0.0;
  std::optional<double> kendall_tau;  // empty if no subject is evaluable
  std::size_t triples = 0;
  std::size_t subjects = 0;  // distinct subjects

  // `ACC=... ASD=... TAU=... n_triples=... n_subjects=...`
  std::string ToString() const;
};

// Throws DegenerateInputError for empty input.
EvaluationReport Evaluate(std::span<const ScoredPair> pairs);

}  // namespace triplescore

#endif  // TRIPLESCORE_METRICS_H_
