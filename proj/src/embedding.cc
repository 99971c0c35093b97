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

#include "triplescore/embedding.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "triplescore/errors.h"
#include "triplescore/negative_sampling.h"

namespace triplescore {

void EmbeddingConfig::Validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho must be in (0, 1]");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (!(initial_lr >= 0.0) || !std::isfinite(initial_lr)) {
    throw ConfigError("initial_lr must be finite and non-negative");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

// Vocab.

Vocab Vocab::Build(const std::vector<TokenSentence> &corpus, int min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const TokenSentence &sentence : corpus) {
    for (const std::string &token : sentence.tokens) {
      ++counts[token];
      ++total;
    }
  }
  if (total == 0) throw ConfigError("cannot build a vocabulary: empty corpus");

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto &[word, count] : counts) {
    if (count >= min_count) kept.emplace_back(word, count);
  }
  if (kept.empty()) {
    throw ConfigError("no word occurs at least min_count=" +
                      std::to_string(min_count) + " times");
  }
  std::sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> words;
  std::vector<std::int64_t> word_counts;
  words.reserve(kept.size());
  word_counts.reserve(kept.size());
  for (auto &[word, count] : kept) {
    words.push_back(std::move(word));
    word_counts.push_back(count);
  }
  return FromWords(std::move(words), std::move(word_counts), total);
}

Vocab Vocab::FromWords(std::vector<std::string> words,
                       std::vector<std::int64_t> counts,
                       std::int64_t total_tokens) {
  if (counts.size() != words.size()) {
    throw ContractError("vocabulary words and counts differ in length");
  }
  Vocab vocab;
  vocab.words_ = std::move(words);
  vocab.counts_ = std::move(counts);
  vocab.total_tokens_ = total_tokens;
  vocab.index_.reserve(vocab.words_.size());
  for (int i = 0; i < vocab.size(); ++i) {
    if (!vocab.index_.emplace(vocab.words_[i], i).second) {
      throw ContractError("duplicate vocabulary word: " + vocab.words_[i]);
    }
  }
  return vocab;
}

std::optional<int> Vocab::Find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Vocab::IndexOf(std::string_view word) const {
  auto index = Find(word);
  if (!index) throw LookupError(std::string(word));
  return *index;
}

double Vocab::Frequency(int index) const {
  if (total_tokens_ <= 0) return 0.0;
  return static_cast<double>(counts_[index]) /
         static_cast<double>(total_tokens_);
}

double KeepProbability(double frequency, double rho) {
  if (frequency <= 0.0) return 1.0;
  return std::min(1.0, std::sqrt(rho / frequency));
}

double KeepProbability(std::string_view word, const Vocab &vocab, double rho) {
  return KeepProbability(vocab.Frequency(vocab.IndexOf(word)), rho);
}

// Similarity.

namespace {

template <typename Real>
double CosineImpl(std::span<const Real> a, std::span<const Real> b) {
  if (a.size() != b.size()) {
    throw ContractError("cosine of vectors with different dimensions");
  }
  double aa = Dot(a, a);
  double bb = Dot(b, b);
  if (aa == 0.0 || bb == 0.0) {
    throw DegenerateInputError("cosine of a zero-norm vector");
  }
  return Dot(a, b) / (std::sqrt(aa) * std::sqrt(bb));
}

}  // namespace

double Cosine(std::span<const float> a, std::span<const float> b) {
  return CosineImpl(a, b);
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  return CosineImpl(a, b);
}

// EmbeddingModel.

EmbeddingModel::EmbeddingModel(Vocab vocab, EmbeddingConfig config,
                               std::vector<float> input_vectors,
                               std::vector<float> output_vectors)
    : vocab_(std::move(vocab)),
      config_(config),
      input_(std::move(input_vectors)),
      output_(std::move(output_vectors)) {
  const std::size_t expected =
      static_cast<std::size_t>(vocab_.size()) * static_cast<std::size_t>(dim());
  if (input_.size() != expected) {
    throw ContractError("input matrix does not match vocabulary x dim");
  }
  if (!output_.empty() && output_.size() != expected) {
    throw ContractError("output matrix does not match vocabulary x dim");
  }
  ComputeNorms();
}

void EmbeddingModel::ComputeNorms() {
  norms_.resize(vocab_.size());
  for (int i = 0; i < vocab_.size(); ++i) {
    auto v = Vector(i);
    norms_[i] = std::sqrt(Dot(v, v));
  }
}

std::span<const float> EmbeddingModel::Vector(int index) const {
  return std::span<const float>(input_).subspan(
      static_cast<std::size_t>(index) * dim(), dim());
}

std::span<const float> EmbeddingModel::Vector(std::string_view word) const {
  return Vector(vocab_.IndexOf(word));
}

std::span<const float> EmbeddingModel::OutputVector(int index) const {
  return std::span<const float>(output_).subspan(
      static_cast<std::size_t>(index) * dim(), dim());
}

double EmbeddingModel::Similarity(std::string_view a, std::string_view b) const {
  return Cosine(Vector(a), Vector(b));
}

std::vector<SimilarityHit> EmbeddingModel::Scan(
    std::span<const double> query, const std::vector<int> &excluded, int topn,
    const CandidateFilter &accept) const {
  double query_norm = std::sqrt(Dot(query, query));
  if (query_norm == 0.0) {
    throw DegenerateInputError("similarity query vector has zero norm");
  }
  struct Scored {
    double score;
    int index;
  };
  std::vector<Scored> scored;
  scored.reserve(vocab_.size());
  for (int i = 0; i < vocab_.size(); ++i) {
    if (std::find(excluded.begin(), excluded.end(), i) != excluded.end()) {
      continue;
    }
    if (accept && !accept(i)) continue;
    double score = 0.0;
    if (norms_[i] > 0.0) {
      auto v = Vector(i);
      double dot = 0.0;
      for (int d = 0; d < dim(); ++d) dot += query[d] * static_cast<double>(v[d]);
      score = dot / (query_norm * norms_[i]);
    }
    scored.push_back({score, i});
  }
  const std::size_t keep =
      std::min(scored.size(), static_cast<std::size_t>(std::max(topn, 0)));
  auto better = [](const Scored &a, const Scored &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
  };
  std::partial_sort(scored.begin(),
                    scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  std::vector<SimilarityHit> hits;
  hits.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    hits.push_back({vocab_.word(scored[i].index), scored[i].score,
                    scored[i].index});
  }
  return hits;
}

std::vector<SimilarityHit> EmbeddingModel::MostSimilar(
    const std::vector<std::string> &words, int topn,
    const CandidateFilter &accept) const {
  if (words.empty()) throw ContractError("most_similar needs a query word");
  if (topn < 1) throw ContractError("topn must be >= 1");
  std::vector<int> indices;
  indices.reserve(words.size());
  for (const std::string &word : words) indices.push_back(vocab_.IndexOf(word));

  std::vector<double> mean(dim(), 0.0);
  for (int index : indices) {
    auto v = Vector(index);
    for (int d = 0; d < dim(); ++d) mean[d] += v[d];
  }
  for (double &x : mean) x /= static_cast<double>(indices.size());
  return Scan(mean, indices, topn, accept);
}

SimilarityHit EmbeddingModel::Analogy(std::string_view a, std::string_view b,
                                      std::string_view c,
                                      const CandidateFilter &accept) const {
  const int ia = vocab_.IndexOf(a);
  const int ib = vocab_.IndexOf(b);
  const int ic = vocab_.IndexOf(c);
  auto va = Vector(ia);
  auto vb = Vector(ib);
  auto vc = Vector(ic);
  std::vector<double> target(dim());
  for (int d = 0; d < dim(); ++d) {
    target[d] = static_cast<double>(va[d]) - static_cast<double>(vb[d]) +
                static_cast<double>(vc[d]);
  }
  auto hits = Scan(target, {ia, ib, ic}, 1, accept);
  if (hits.empty()) {
    throw DegenerateInputError("analogy has no candidate word");
  }
  return hits.front();
}

// Model files.

namespace {

std::string FormatFloat(float value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.9g", static_cast<double>(value));
  return buffer;
}

std::string FormatDouble(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

template <typename T>
T ParseNumber(std::string_view text, std::size_t line, const char *what) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(text) +
                         "'",
                     line);
  }
  return value;
}

std::string MetaPath(const std::string &path) { return path + ".meta"; }

}  // namespace

void EmbeddingModel::Save(const std::string &path) const {
  std::string out;
  out += std::to_string(vocab_.size()) + " " + std::to_string(dim()) + "\n";
  for (int i = 0; i < vocab_.size(); ++i) {
    out += vocab_.word(i);
    for (float x : Vector(i)) {
      out += ' ';
      out += FormatFloat(x);
    }
    out += '\n';
  }
  WriteFile(path, out);

  std::string meta;
  meta += "dim=" + std::to_string(config_.dim) + "\n";
  meta += "negatives=" + std::to_string(config_.negatives) + "\n";
  meta += "rho=" + FormatDouble(config_.rho) + "\n";
  meta += "window=" + std::to_string(config_.window) + "\n";
  meta += "epochs=" + std::to_string(config_.epochs) + "\n";
  meta += "min_count=" + std::to_string(config_.min_count) + "\n";
  meta += "initial_lr=" + FormatDouble(config_.initial_lr) + "\n";
  meta += "seed=" + std::to_string(config_.seed) + "\n";
  meta += "workers=" + std::to_string(config_.workers) + "\n";
  meta += "total_tokens=" + std::to_string(vocab_.total_tokens()) + "\n";
  meta += "counts\n";
  for (int i = 0; i < vocab_.size(); ++i) {
    meta += std::to_string(vocab_.count(i)) + "\n";
  }
  WriteFile(MetaPath(path), meta);
}

EmbeddingModel EmbeddingModel::Load(const std::string &path) {
  std::vector<std::string> lines = ReadLines(path);
  if (lines.empty()) throw ParseError("empty model file " + path, 1);
  auto header = SplitWhitespace(lines[0]);
  if (header.size() != 2) throw ParseError("header must be `V dim`", 1);
  const auto vocab_size = ParseNumber<long long>(header[0], 1, "vocabulary size");
  const auto dim = ParseNumber<int>(header[1], 1, "dimension");
  if (vocab_size < 1 || dim < 1) {
    throw ParseError("header values must be positive", 1);
  }

  std::vector<std::string> words;
  std::vector<float> vectors;
  words.reserve(static_cast<std::size_t>(vocab_size));
  vectors.reserve(static_cast<std::size_t>(vocab_size) * dim);
  std::size_t line_number = 1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    line_number = i + 1;
    auto fields = SplitWhitespace(lines[i]);
    if (fields.empty()) continue;
    if (static_cast<long long>(words.size()) == vocab_size) {
      throw ParseError("more vectors than the header declares", line_number);
    }
    if (fields.size() != static_cast<std::size_t>(dim) + 1) {
      throw ParseError("expected a word and " + std::to_string(dim) +
                           " values, got " + std::to_string(fields.size()) +
                           " fields",
                       line_number);
    }
    for (int d = 1; d <= dim; ++d) {
      float x = ParseNumber<float>(fields[d], line_number, "vector component");
      if (!std::isfinite(x)) {
        throw ParseError("non-finite vector component", line_number);
      }
      vectors.push_back(x);
    }
    words.push_back(std::move(fields[0]));
  }
  if (static_cast<long long>(words.size()) != vocab_size) {
    throw ParseError("header declares " + std::to_string(vocab_size) +
                         " vectors, file has " + std::to_string(words.size()),
                     line_number + 1);
  }

  EmbeddingConfig config;
  config.dim = dim;
  std::vector<std::int64_t> counts(words.size(), 0);
  std::int64_t total_tokens = 0;
  if (std::filesystem::exists(MetaPath(path))) {
    std::vector<std::string> meta = ReadLines(MetaPath(path));
    std::size_t i = 0;
    for (; i < meta.size(); ++i) {
      const std::string &line = meta[i];
      if (line == "counts") break;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value", i + 1);
      std::string_view key(line.data(), eq);
      std::string_view value(line.data() + eq + 1, line.size() - eq - 1);
      if (key == "dim") {
        if (ParseNumber<int>(value, i + 1, "dim") != dim) {
          throw ParseError("metadata dim does not match model file", i + 1);
        }
      } else if (key == "negatives") {
        config.negatives = ParseNumber<int>(value, i + 1, "negatives");
      } else if (key == "rho") {
        config.rho = ParseNumber<double>(value, i + 1, "rho");
      } else if (key == "window") {
        config.window = ParseNumber<int>(value, i + 1, "window");
      } else if (key == "epochs") {
        config.epochs = ParseNumber<int>(value, i + 1, "epochs");
      } else if (key == "min_count") {
        config.min_count = ParseNumber<int>(value, i + 1, "min_count");
      } else if (key == "initial_lr") {
        config.initial_lr = ParseNumber<double>(value, i + 1, "initial_lr");
      } else if (key == "seed") {
        config.seed = ParseNumber<std::uint64_t>(value, i + 1, "seed");
      } else if (key == "workers") {
        config.workers = ParseNumber<int>(value, i + 1, "workers");
      } else if (key == "total_tokens") {
        total_tokens = ParseNumber<std::int64_t>(value, i + 1, "total_tokens");
      } else {
        throw ParseError("unknown metadata key " + std::string(key), i + 1);
      }
    }
    if (i == meta.size()) throw ParseError("metadata lacks counts section", i);
    std::size_t n = 0;
    for (++i; i < meta.size(); ++i) {
      if (Trim(meta[i]).empty()) continue;
      if (n == counts.size()) throw ParseError("too many counts", i + 1);
      counts[n++] = ParseNumber<std::int64_t>(Trim(meta[i]), i + 1, "count");
    }
    if (n != counts.size()) {
      throw ParseError("metadata has " + std::to_string(n) + " counts for " +
                           std::to_string(counts.size()) + " words",
                       meta.size());
    }
  }

  Vocab vocab;
  try {
    vocab = Vocab::FromWords(std::move(words), std::move(counts), total_tokens);
  } catch (const ContractError &e) {
    throw ParseError(e.what());
  }
  return EmbeddingModel(std::move(vocab), config, std::move(vectors), {});
}

EmbeddingModel InitializeModel(Vocab vocab, const EmbeddingConfig &config) {
  config.Validate();
  const std::size_t n =
      static_cast<std::size_t>(vocab.size()) * static_cast<std::size_t>(config.dim);
  std::vector<float> input(n);
  std::mt19937_64 rng(config.seed);
  const double scale = 1.0 / static_cast<double>(config.dim);
  for (float &x : input) {
    // 53 random bits -> [0, 1).
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = static_cast<float>((u - 0.5) * scale);
  }
  std::vector<float> output(n, 0.0f);
  return EmbeddingModel(std::move(vocab), config, std::move(input),
                        std::move(output));
}

}  // namespace triplescore
