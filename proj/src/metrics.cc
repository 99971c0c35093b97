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

#include "triplescore/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "triplescore/errors.h"

namespace triplescore {
namespace {

constexpr double kAccuracyWindow = 2.0;

void RequireNonEmpty(std::span<const ScoredPair> pairs, const char *metric) {
  if (pairs.empty()) {
    throw DegenerateInputError(std::string(metric) + " of an empty pair set");
  }
}

// Subject -> its pairs, in a fixed (sorted) subject order.
std::map<std::string, std::vector<const ScoredPair *>> GroupBySubject(
    std::span<const ScoredPair> pairs) {
  std::map<std::string, std::vector<const ScoredPair *>> groups;
  for (const ScoredPair &pair : pairs) groups[pair.subject].push_back(&pair);
  return groups;
}

// Transposition sum and considered pair count for one subject.
std::pair<double, std::size_t> SubjectTranspositions(
    const std::vector<const ScoredPair *> &group) {
  double transposed = 0.0;
  std::size_t considered = 0;
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      const ScoredPair &a = *group[i];
      const ScoredPair &b = *group[j];
      if (a.truth == b.truth) continue;
      ++considered;
      const double truth_order = a.truth < b.truth ? 1.0 : -1.0;
      const double predicted_delta = b.predicted - a.predicted;
      if (predicted_delta == 0.0) {
        transposed += 0.5;
      } else if (predicted_delta * truth_order < 0.0) {
        transposed += 1.0;
      }
    }
  }
  return {transposed, considered};
}

std::string FormatMetric(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

}  // namespace

double Accuracy(std::span<const ScoredPair> pairs) {
  RequireNonEmpty(pairs, "accuracy");
  std::size_t accurate = 0;
  for (const ScoredPair &pair : pairs) {
    if (std::fabs(pair.predicted - pair.truth) <= kAccuracyWindow) ++accurate;
  }
  return static_cast<double>(accurate) / static_cast<double>(pairs.size());
}

double AverageScoreDifference(std::span<const ScoredPair> pairs) {
  RequireNonEmpty(pairs, "average score difference");
  double total = 0.0;
  for (const ScoredPair &pair : pairs) {
    total += std::fabs(pair.predicted - pair.truth);
  }
  return total / static_cast<double>(pairs.size());
}

double KendallTau(std::span<const ScoredPair> pairs) {
  double total = 0.0;
  std::size_t subjects = 0;
  for (const auto &[subject, group] : GroupBySubject(pairs)) {
    auto [transposed, considered] = SubjectTranspositions(group);
    if (considered == 0) continue;
    total += transposed / static_cast<double>(considered);
    ++subjects;
  }
  if (subjects == 0) {
    throw DegenerateInputError(
        "Kendall's tau needs a subject with two differently scored triples");
  }
  return total / static_cast<double>(subjects);
}

std::size_t EvaluableSubjects(std::span<const ScoredPair> pairs) {
  std::size_t subjects = 0;
  for (const auto &[subject, group] : GroupBySubject(pairs)) {
    if (SubjectTranspositions(group).second > 0) ++subjects;
  }
  return subjects;
}

int Truncate2To5(int score) {
  if (score < 0 || score > 7) {
    throw ContractError("score " + std::to_string(score) + " outside [0, 7]");
  }
  return std::clamp(score, 2, 5);
}

EvaluationReport Evaluate(std::span<const ScoredPair> pairs) {
  EvaluationReport report;
  report.accuracy = Accuracy(pairs);
  report.average_score_difference = AverageScoreDifference(pairs);
  if (EvaluableSubjects(pairs) > 0) report.kendall_tau = KendallTau(pairs);
  report.triples = pairs.size();
  std::set<std::string> subjects;
  for (const ScoredPair &pair : pairs) subjects.insert(pair.subject);
  report.subjects = subjects.size();
  return report;
}

std::string EvaluationReport::ToString() const {
  return "ACC=" + FormatMetric(accuracy) +
         " ASD=" + FormatMetric(average_score_difference) +
         " TAU=" + (kendall_tau ? FormatMetric(*kendall_tau) : "undefined") +
         " n_triples=" + std::to_string(triples) +
         " n_subjects=" + std::to_string(subjects);
}

}  // namespace triplescore
