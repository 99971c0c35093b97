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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "triplescore/embedding.h"
#include "triplescore/errors.h"
#include "triplescore/negative_sampling.h"

namespace triplescore {
namespace {

constexpr double kNoisePower = 0.75;
constexpr double kMinLearningRateFraction = 1e-4;

double Uniform(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draws vocabulary indices with probability proportional to count^0.75.
class NoiseSampler {
 public:
  explicit NoiseSampler(const Vocab &vocab) {
    cumulative_.reserve(vocab.size());
    double total = 0.0;
    for (int i = 0; i < vocab.size(); ++i) {
      total += std::pow(static_cast<double>(vocab.count(i)), kNoisePower);
      cumulative_.push_back(total);
    }
    if (!(total > 0.0)) {
      throw ConfigError("negative sampling needs vocabulary counts");
    }
  }

  int Sample(std::mt19937_64 &rng) const {
    double target = Uniform(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct Shard {
  std::size_t begin;
  std::size_t end;
};

struct ShardResult {
  double loss = 0.0;
  std::int64_t positions = 0;
  std::exception_ptr error;
};

class CbowTrainer {
 public:
  CbowTrainer(const std::vector<std::vector<int>> &sentences,
              const EmbeddingConfig &config, const Vocab &vocab,
              std::vector<float> *input, std::vector<float> *output,
              std::int64_t planned_words)
      : sentences_(sentences),
        config_(config),
        noise_(vocab),
        input_(input->data()),
        output_(output->data()),
        planned_words_(static_cast<double>(planned_words)) {
    keep_.reserve(vocab.size());
    for (int i = 0; i < vocab.size(); ++i) {
      keep_.push_back(KeepProbability(vocab.Frequency(i), config.rho));
    }
  }

  void RunShard(int epoch, Shard shard, std::mt19937_64 &rng,
                ShardResult *result) {
    const int dim = config_.dim;
    std::vector<float> hidden(dim);
    std::vector<float> grad_hidden(dim);
    std::vector<int> kept;
    std::vector<int> context;

    for (std::size_t s = shard.begin; s < shard.end; ++s) {
      const std::vector<int> &sentence = sentences_[s];
      const double progress =
          static_cast<double>(words_processed_.load(std::memory_order_relaxed)) /
          planned_words_;
      const double lr = config_.initial_lr *
                        std::max(kMinLearningRateFraction, 1.0 - progress);

      // Subsampling drops a token both as a center and as a context word.
      kept.clear();
      for (int word : sentence) {
        if (SampleKeep(keep_[word], rng)) kept.push_back(word);
      }

      const int n = static_cast<int>(kept.size());
      for (int t = 0; t < n; ++t) {
        context.clear();
        const int lo = std::max(0, t - config_.window);
        const int hi = std::min(n - 1, t + config_.window);
        for (int c = lo; c <= hi; ++c) {
          if (c != t) context.push_back(kept[c]);
        }
        if (context.empty()) continue;

        std::fill(hidden.begin(), hidden.end(), 0.0f);
        for (int word : context) {
          const float *v = input_ + static_cast<std::size_t>(word) * dim;
          for (int d = 0; d < dim; ++d) hidden[d] += v[d];
        }
        const float inv_context = 1.0f / static_cast<float>(context.size());
        for (float &x : hidden) x *= inv_context;
        std::fill(grad_hidden.begin(), grad_hidden.end(), 0.0f);

        const int center = kept[t];
        for (int k = 0; k <= config_.negatives; ++k) {
          int target = center;
          if (k > 0) {
            target = noise_.Sample(rng);
            if (target == center) continue;
          }
          float *u = output_ + static_cast<std::size_t>(target) * dim;
          LossTerm term = NegativeSamplingTerm<float>(
              hidden, std::span<const float>(u, dim), k == 0);
          if (!std::isfinite(term.loss) || !std::isfinite(term.slope)) {
            throw NumericalError("non-finite loss in epoch " +
                                 std::to_string(epoch + 1) + ", sentence " +
                                 std::to_string(s) + ", position " +
                                 std::to_string(t));
          }
          result->loss += term.loss;
          const float slope = static_cast<float>(term.slope);
          const float step = static_cast<float>(lr * term.slope);
          for (int d = 0; d < dim; ++d) {
            grad_hidden[d] += slope * u[d];
            u[d] -= step * hidden[d];
          }
        }

        // d(mean)/d(context vector) = 1 / |context|.
        const float context_step = static_cast<float>(lr) * inv_context;
        for (int word : context) {
          float *v = input_ + static_cast<std::size_t>(word) * dim;
          for (int d = 0; d < dim; ++d) v[d] -= context_step * grad_hidden[d];
        }
        ++result->positions;
      }
      words_processed_.fetch_add(static_cast<std::int64_t>(sentence.size()),
                                 std::memory_order_relaxed);
    }
  }

 private:
  const std::vector<std::vector<int>> &sentences_;
  const EmbeddingConfig &config_;
  NoiseSampler noise_;
  std::vector<double> keep_;
  float *input_;
  float *output_;
  double planned_words_;
  std::atomic<std::int64_t> words_processed_{0};
};

}  // namespace

bool SampleKeep(double keep_probability, std::mt19937_64 &rng) {
  return keep_probability >= 1.0 || Uniform(rng) < keep_probability;
}

void TrainCbow(const std::vector<TokenSentence> &corpus, EmbeddingModel *model,
               TrainingReport *report) {
  const EmbeddingConfig &config = model->config_;
  config.Validate();
  const Vocab &vocab = model->vocab_;
  if (model->output_.size() != model->input_.size()) {
    model->output_.assign(model->input_.size(), 0.0f);
  }

  std::vector<std::vector<int>> sentences;
  sentences.reserve(corpus.size());
  std::int64_t total_words = 0;
  for (const TokenSentence &sentence : corpus) {
    std::vector<int> ids;
    ids.reserve(sentence.tokens.size());
    for (const std::string &token : sentence.tokens) {
      if (auto index = vocab.Find(token)) ids.push_back(*index);
    }
    if (ids.size() < 2) continue;
    total_words += static_cast<std::int64_t>(ids.size());
    sentences.push_back(std::move(ids));
  }
  if (sentences.empty()) {
    throw ConfigError("no training sentence has two in-vocabulary tokens");
  }

  CbowTrainer trainer(sentences, config, vocab, &model->input_, &model->output_,
                      total_words * config.epochs);
  const int workers =
      std::min<int>(config.workers, static_cast<int>(sentences.size()));
  std::vector<std::mt19937_64> rngs;
  for (int w = 0; w < workers; ++w) {
    std::seed_seq seq{config.seed, static_cast<std::uint64_t>(w),
                      std::uint64_t{0x5eed}};
    rngs.emplace_back(seq);
  }

  TrainingReport local;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<ShardResult> results(workers);
    if (workers == 1) {
      trainer.RunShard(epoch, {0, sentences.size()}, rngs[0], &results[0]);
    } else {
      std::vector<std::thread> threads;
      const std::size_t per = (sentences.size() + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        Shard shard{std::min(sentences.size(), w * per),
                    std::min(sentences.size(), (w + 1) * per)};
        threads.emplace_back([&, w, shard] {
          try {
            trainer.RunShard(epoch, shard, rngs[w], &results[w]);
          } catch (...) {
            results[w].error = std::current_exception();
          }
        });
      }
      for (auto &thread : threads) thread.join();
      for (auto &result : results) {
        if (result.error) std::rethrow_exception(result.error);
      }
    }
    double loss = 0.0;
    std::int64_t positions = 0;
    for (const auto &result : results) {
      loss += result.loss;
      positions += result.positions;
    }
    local.epoch_mean_loss.push_back(
        positions > 0 ? loss / static_cast<double>(positions) : 0.0);
    local.positions += positions;
  }

  model->ComputeNorms();
  if (report != nullptr) *report = std::move(local);
}

EmbeddingModel TrainCbow(const std::vector<TokenSentence> &corpus,
                         const EmbeddingConfig &config, TrainingReport *report) {
  config.Validate();
  EmbeddingModel model =
      InitializeModel(Vocab::Build(corpus, config.min_count), config);
  TrainCbow(corpus, &model, report);
  return model;
}

}  // namespace triplescore
