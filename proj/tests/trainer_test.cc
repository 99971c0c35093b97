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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.h"
#include "triplescore/embedding.h"
#include "triplescore/errors.h"
#include "triplescore/negative_sampling.h"

namespace triplescore {
namespace {

using testing::TwoClusterCorpus;

std::string ReadAll(const std::string &path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(TrainCbowTest, ZeroLearningRateKeepsInitialization) {
  EmbeddingConfig config;
  config.dim = 8;
  config.epochs = 1;
  config.min_count = 1;
  config.initial_lr = 0.0;
  std::vector<TokenSentence> corpus = {{{"a", "b", "c", "a"}}};
  EmbeddingModel initial =
      InitializeModel(Vocab::Build(corpus, config.min_count), config);
  EmbeddingModel trained = TrainCbow(corpus, config);
  EXPECT_EQ(trained.input_vectors(), initial.input_vectors());
  EXPECT_EQ(trained.output_vectors(), initial.output_vectors());
}

TEST(TrainCbowTest, InitializationRange) {
  EmbeddingConfig config;
  config.dim = 10;
  EmbeddingModel model =
      InitializeModel(Vocab::FromWords({"a", "b"}, {1, 1}, 2), config);
  for (float x : model.input_vectors()) {
    EXPECT_LE(std::fabs(x), 0.05f);
  }
  for (float x : model.output_vectors()) EXPECT_EQ(x, 0.0f);
}

TEST(TrainCbowTest, LossDecreases) {
  EmbeddingConfig config;
  config.dim = 16;
  config.epochs = 10;
  config.min_count = 1;
  config.negatives = 5;
  config.rho = 1.0;
  TrainingReport report;
  TrainCbow(TwoClusterCorpus(200, 1), config, &report);
  ASSERT_EQ(report.epoch_mean_loss.size(), 10u);
  EXPECT_LT(report.epoch_mean_loss.back(), report.epoch_mean_loss.front());
  EXPECT_GT(report.positions, 0);
}

TEST(TrainCbowTest, DeterministicModeIsBitIdentical) {
  EmbeddingConfig config;
  config.dim = 8;
  config.epochs = 3;
  config.min_count = 1;
  config.rho = 0.01;
  auto dir = testing::TempDir("train_determinism");
  std::string a = (dir / "a.vec").string();
  std::string b = (dir / "b.vec").string();
  TrainCbow(TwoClusterCorpus(100, 4), config).Save(a);
  TrainCbow(TwoClusterCorpus(100, 4), config).Save(b);
  EXPECT_EQ(ReadAll(a), ReadAll(b));
  EXPECT_EQ(ReadAll(a + ".meta"), ReadAll(b + ".meta"));
  config.seed = 2;
  TrainCbow(TwoClusterCorpus(100, 4), config).Save(b);
  EXPECT_NE(ReadAll(a), ReadAll(b));
}

TEST(TrainCbowTest, ParallelModeSeparatesClusters) {
  EmbeddingConfig config;
  config.dim = 16;
  config.epochs = 10;
  config.min_count = 1;
  config.negatives = 5;
  config.rho = 1.0;
  config.workers = 3;
  EmbeddingModel model = TrainCbow(TwoClusterCorpus(400, 9), config);
  EXPECT_GT(model.Similarity("red", "blue"), model.Similarity("red", "dog"));
  for (float x : model.input_vectors()) ASSERT_TRUE(std::isfinite(x));
}

TEST(TrainCbowTest, OverflowingRateRaisesNumericalError) {
  EmbeddingConfig config;
  config.dim = 4;
  config.epochs = 50;
  config.min_count = 1;
  config.rho = 1.0;
  config.initial_lr = 1e30;
  EXPECT_THROW(TrainCbow(TwoClusterCorpus(50, 2), config), NumericalError);
}

TEST(TrainCbowTest, CorpusWithoutUsableSentenceRejected) {
  EmbeddingConfig config;
  config.min_count = 2;
  EXPECT_THROW(TrainCbow({{{"a", "b"}}, {{"a", "c"}}}, config), ConfigError);
}

TEST(SampleKeepTest, CertainAndImpossible) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(SampleKeep(1.0, rng));
    EXPECT_FALSE(SampleKeep(0.0, rng));
  }
}

TEST(NegativeSamplingTest, StableSigmoid) {
  EXPECT_DOUBLE_EQ(Sigmoid(0.0), 0.5);
  EXPECT_NEAR(LogSigmoid(-800.0), -800.0, 1e-9);
  EXPECT_NEAR(LogSigmoid(800.0), 0.0, 1e-12);
  EXPECT_TRUE(std::isfinite(LogSigmoid(-1e6)));
}

TEST(NegativeSamplingTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 0.5);
  const int dim = 8;
  const double step = 1e-5;
  auto vec = [&] {
    std::vector<double> v(dim);
    for (double &x : v) x = normal(rng);
    return v;
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> h = vec(), pos = vec();
    std::vector<std::vector<double>> negs(3);
    for (auto &n : negs) n = vec();
    auto loss = [&] {
      std::vector<std::span<const double>> spans(negs.begin(), negs.end());
      return ComputeNegativeSamplingGradient(h, pos, spans).loss;
    };
    std::vector<std::span<const double>> spans(negs.begin(), negs.end());
    NegativeSamplingGradient grad = ComputeNegativeSamplingGradient(h, pos, spans);
    auto check = [&](std::vector<double> &param, const std::vector<double> &analytic) {
      for (int d = 0; d < dim; ++d) {
        double saved = param[d];
        param[d] = saved + step;
        double up = loss();
        param[d] = saved - step;
        double down = loss();
        param[d] = saved;
        double numeric = (up - down) / (2 * step);
        double scale = std::max({std::fabs(numeric), std::fabs(analytic[d]), 1e-3});
        EXPECT_LE(std::fabs(numeric - analytic[d]) / scale, 1e-4);
      }
    };
    check(h, grad.hidden);
    check(pos, grad.positive);
    for (std::size_t k = 0; k < negs.size(); ++k) check(negs[k], grad.negatives[k]);
  }
}

}  // namespace
}  // namespace triplescore
