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

#ifndef TRIPLESCORE_EMBEDDING_H_
#define TRIPLESCORE_EMBEDDING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "triplescore/corpus.h"

namespace triplescore {

struct EmbeddingConfig {
  int dim = 300;
  int negatives = 15;
  double rho = 1e-4;  // subsampling threshold
  int window = 5;     // symmetric context radius
  int epochs = 50;
  int min_count = 5;
  double initial_lr = 0.025;
  std::uint64_t seed = 1;
  // 1 trains deterministically. More workers update the shared matrices
  // without locks and are only statistically reproducible.
  int workers = 1;

  // Throws ConfigError on out-of-range values.
  void Validate() const;
};

// Dense word index. Words are ordered by count (descending), then by word.
class Vocab {
 public:
  Vocab() = default;

  // Counts every token; words below min_count are excluded but still
  // contribute to total_tokens. Throws ConfigError if the corpus or the
  // resulting vocabulary is empty.
  static Vocab Build(const std::vector<TokenSentence> &corpus, int min_count);

  // Vocabulary in the given order, e.g. from a vector file.
  static Vocab FromWords(std::vector<std::string> words,
                         std::vector<std::int64_t> counts,
                         std::int64_t total_tokens);

  int size() const { return static_cast<int>(words_.size()); }
  std::optional<int> Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word).has_value(); }
  // Throws LookupError.
  int IndexOf(std::string_view word) const;

  const std::string &word(int index) const { return words_[index]; }
  std::int64_t count(int index) const { return counts_[index]; }
  std::int64_t total_tokens() const { return total_tokens_; }
  const std::vector<std::string> &words() const { return words_; }

  // count(w) / total_tokens.
  double Frequency(int index) const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>()(s);
    }
  };

  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, int, Hash, std::equal_to<>> index_;
  std::int64_t total_tokens_ = 0;
};

// Probability of keeping one occurrence of a word with relative frequency f
// under subsampling threshold rho: min(1, sqrt(rho / f)).
double KeepProbability(double frequency, double rho);
// Throws LookupError for unknown words.
double KeepProbability(std::string_view word, const Vocab &vocab, double rho);

// One Bernoulli subsampling draw: true keeps the token occurrence.
bool SampleKeep(double keep_probability, std::mt19937_64 &rng);

struct SimilarityHit {
  std::string word;
  double score = 0.0;
  int index = -1;
};

// Cosine similarity. Throws DegenerateInputError for a zero-norm argument and
// ContractError for mismatched dimensions.
double Cosine(std::span<const float> a, std::span<const float> b);
double Cosine(std::span<const double> a, std::span<const double> b);

struct TrainingReport {
  std::vector<double> epoch_mean_loss;  // per predicted position
  std::int64_t positions = 0;           // positions trained, all epochs
};

// Restricts the candidates of a nearest-neighbor query, by vocabulary index.
using CandidateFilter = std::function<bool(int)>;

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  // Matrices are row-major V x dim.
  EmbeddingModel(Vocab vocab, EmbeddingConfig config,
                 std::vector<float> input_vectors,
                 std::vector<float> output_vectors);

  const Vocab &vocab() const { return vocab_; }
  const EmbeddingConfig &config() const { return config_; }
  int dim() const { return config_.dim; }
  bool Contains(std::string_view word) const { return vocab_.Contains(word); }

  std::span<const float> Vector(int index) const;
  // Throws LookupError.
  std::span<const float> Vector(std::string_view word) const;
  std::span<const float> OutputVector(int index) const;

  const std::vector<float> &input_vectors() const { return input_; }
  const std::vector<float> &output_vectors() const { return output_; }

  // Cosine of two vocabulary words. Throws LookupError.
  double Similarity(std::string_view a, std::string_view b) const;

  // Compares the mean of the query words' vectors against every vocabulary
  // vector. Query words never appear in the result. Sorted by score
  // descending, ties by vocabulary index ascending. Returns at most topn
  // hits. Zero-norm candidates score 0. Throws LookupError naming the first
  // unknown query word.
  std::vector<SimilarityHit> MostSimilar(
      const std::vector<std::string> &words, int topn,
      const CandidateFilter &accept = {}) const;

  // Word (other than a, b, c) maximizing cosine to vec(a) - vec(b) + vec(c).
  SimilarityHit Analogy(std::string_view a, std::string_view b,
                        std::string_view c,
                        const CandidateFilter &accept = {}) const;

  // Text format: header `V dim`, then `word v1 ... vdim` per line with 9
  // significant digits. Vocabulary counts and the training configuration go
  // to a `<path>.meta` sidecar.
  void Save(const std::string &path) const;
  // Loads a model file. The sidecar is optional, so plain pretrained vector
  // files in the same text format load too (with zero counts).
  static EmbeddingModel Load(const std::string &path);

 private:
  friend void TrainCbow(const std::vector<TokenSentence> &corpus,
                        EmbeddingModel *model, TrainingReport *report);

  void ComputeNorms();
  std::vector<SimilarityHit> Scan(std::span<const double> query,
                                  const std::vector<int> &excluded, int topn,
                                  const CandidateFilter &accept) const;

  Vocab vocab_;
  EmbeddingConfig config_;
  std::vector<float> input_;
  std::vector<float> output_;
  std::vector<double> norms_;
};

// Input vectors uniform in [-0.5/dim, 0.5/dim], output vectors zero.
EmbeddingModel InitializeModel(Vocab vocab, const EmbeddingConfig &config);

// CBOW with negative sampling and frequent-word subsampling. Builds the
// vocabulary from the corpus. Throws ConfigError for an empty corpus and
// NumericalError if training produces non-finite values.
EmbeddingModel TrainCbow(const std::vector<TokenSentence> &corpus,
                         const EmbeddingConfig &config,
                         TrainingReport *report = nullptr);

// Continues training an initialized model in place.
void TrainCbow(const std::vector<TokenSentence> &corpus, EmbeddingModel *model,
               TrainingReport *report = nullptr);

}  // namespace triplescore

#endif  // TRIPLESCORE_EMBEDDING_H_
