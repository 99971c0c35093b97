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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "test_util.h"
#include "triplescore/embedding.h"
#include "triplescore/errors.h"

namespace triplescore {
namespace {

using testing::MakeModel;
using testing::RandomModel;

std::vector<TokenSentence> Corpus(const std::vector<std::string> &lines) {
  std::vector<TokenSentence> corpus;
  for (const auto &line : lines) corpus.push_back({SplitWhitespace(line)});
  return corpus;
}

TEST(VocabTest, CountsAndFloor) {
  Vocab vocab = Vocab::Build(Corpus({"a a b"}), 1);
  ASSERT_EQ(vocab.size(), 2);
  EXPECT_EQ(vocab.count(vocab.IndexOf("a")), 2);
  EXPECT_EQ(vocab.count(vocab.IndexOf("b")), 1);
  EXPECT_EQ(vocab.total_tokens(), 3);

  Vocab floored = Vocab::Build(Corpus({"a a b"}), 2);
  ASSERT_EQ(floored.size(), 1);
  EXPECT_EQ(floored.word(0), "a");
  EXPECT_EQ(floored.total_tokens(), 3);
  EXPECT_THROW(floored.IndexOf("b"), LookupError);
}

TEST(VocabTest, OrderIsCountThenWord) {
  Vocab vocab = Vocab::Build(Corpus({"c b a b c", "z"}), 1);
  EXPECT_EQ(vocab.words(), (std::vector<std::string>{"b", "c", "a", "z"}));
}

TEST(VocabTest, EmptyCorpusOrVocabularyRejected) {
  EXPECT_THROW(Vocab::Build({}, 1), ConfigError);
  EXPECT_THROW(Vocab::Build(Corpus({"a b"}), 5), ConfigError);
}

TEST(VocabTest, MatchesHashMapRecount) {
  std::mt19937_64 rng(3);
  std::vector<TokenSentence> corpus;
  std::map<std::string, std::int64_t> oracle;
  std::int64_t total = 0;
  for (int s = 0; s < 1000; ++s) {
    TokenSentence sentence;
    for (int i = 0, n = 2 + static_cast<int>(rng() % 10); i < n; ++i) {
      // Zipf-like: small ids are frequent.
      std::string word = "t" + std::to_string((rng() % 50) * (rng() % 50) / 49);
      sentence.tokens.push_back(word);
      ++oracle[word];
      ++total;
    }
    corpus.push_back(std::move(sentence));
  }
  Vocab vocab = Vocab::Build(corpus, 3);
  EXPECT_EQ(vocab.total_tokens(), total);
  int expected_size = 0;
  for (const auto &[word, count] : oracle) {
    if (count < 3) {
      EXPECT_FALSE(vocab.Contains(word));
      continue;
    }
    ++expected_size;
    ASSERT_TRUE(vocab.Contains(word)) << word;
    EXPECT_EQ(vocab.count(vocab.IndexOf(word)), count);
  }
  EXPECT_EQ(vocab.size(), expected_size);
}

TEST(KeepProbabilityTest, Examples) {
  const double rho = 1e-4;
  EXPECT_DOUBLE_EQ(KeepProbability(rho, rho), 1.0);
  EXPECT_DOUBLE_EQ(KeepProbability(4 * rho, rho), 0.5);
  EXPECT_DOUBLE_EQ(KeepProbability(rho / 4, rho), 1.0);
  double previous = 1.0;
  for (double f = 1e-6; f <= 1.0; f *= 1.7) {
    double keep = KeepProbability(f, rho);
    EXPECT_LE(keep, previous);
    EXPECT_GE(keep, 0.0);
    EXPECT_LE(keep, 1.0);
    previous = keep;
  }
  Vocab vocab = Vocab::Build(Corpus({"a a a b"}), 1);
  EXPECT_DOUBLE_EQ(KeepProbability("a", vocab, 0.75), 1.0);
  EXPECT_THROW(KeepProbability("zzz", vocab, 0.75), LookupError);
}

TEST(CosineTest, Basics) {
  std::vector<float> a = {1, 0}, b = {0, 2}, c = {3, 3};
  EXPECT_DOUBLE_EQ(Cosine(std::span<const float>(a), std::span<const float>(b)), 0.0);
  EXPECT_NEAR(Cosine(std::span<const float>(a), std::span<const float>(c)),
              std::sqrt(0.5), 1e-12);
  std::vector<float> zero = {0, 0};
  EXPECT_THROW(Cosine(std::span<const float>(a), std::span<const float>(zero)),
               DegenerateInputError);
  std::vector<float> three = {1, 2, 3};
  EXPECT_THROW(Cosine(std::span<const float>(a), std::span<const float>(three)),
               ContractError);
}

TEST(MostSimilarTest, ExcludesQueryAndCapsSize) {
  EmbeddingModel model = RandomModel(4, 3, 11);
  auto hits = model.MostSimilar({"w1"}, 3);
  ASSERT_EQ(hits.size(), 3u);
  for (const auto &hit : hits) EXPECT_NE(hit.word, "w1");
  EXPECT_EQ(model.MostSimilar({"w1"}, 100).size(), 3u);
  EXPECT_THROW(model.MostSimilar({"nope"}, 3), LookupError);
}

TEST(MostSimilarTest, TiesBrokenByIndex) {
  EmbeddingModel model =
      MakeModel({"q", "a", "b", "c"}, {{1, 0}, {0, 1}, {1, 1}, {0, 1}});
  auto hits = model.MostSimilar({"q"}, 3);
  EXPECT_EQ(hits[0].word, "b");
  EXPECT_EQ(hits[1].word, "a");
  EXPECT_EQ(hits[2].word, "c");
}

TEST(MostSimilarTest, MatchesBruteForceOnRandomModel) {
  EmbeddingModel model = RandomModel(10, 5, 5);
  for (int q = 0; q < 10; ++q) {
    std::vector<std::pair<double, int>> oracle;
    for (int i = 0; i < 10; ++i) {
      if (i == q) continue;
      double dot = 0, nq = 0, ni = 0;
      for (int d = 0; d < 5; ++d) {
        dot += double(model.Vector(q)[d]) * model.Vector(i)[d];
        nq += double(model.Vector(q)[d]) * model.Vector(q)[d];
        ni += double(model.Vector(i)[d]) * model.Vector(i)[d];
      }
      oracle.push_back({-dot / std::sqrt(nq * ni), i});
    }
    std::sort(oracle.begin(), oracle.end());
    auto hits = model.MostSimilar({model.vocab().word(q)}, 9);
    ASSERT_EQ(hits.size(), 9u);
    for (int k = 0; k < 9; ++k) {
      EXPECT_EQ(hits[k].index, oracle[k].second);
      EXPECT_NEAR(hits[k].score, -oracle[k].first, 1e-12);
    }
  }
}

TEST(MostSimilarTest, FilterRestrictsCandidates) {
  EmbeddingModel model = RandomModel(20, 4, 2);
  auto hits = model.MostSimilar({"w0"}, 5, [](int i) { return i % 2 == 1; });
  ASSERT_EQ(hits.size(), 5u);
  for (const auto &hit : hits) EXPECT_EQ(hit.index % 2, 1);
}

TEST(AnalogyTest, OrthogonalBasisReducesToNearestOfC) {
  EmbeddingModel model = MakeModel(
      {"e1", "e2", "e3", "e4", "near3"},
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0.1, 1, 0}});
  EXPECT_EQ(model.Analogy("e1", "e1", "e3").word, "near3");
}

TEST(AnalogyTest, PlantedOffsetsRecovered) {
  // country_i + delta = demonym_i
  std::vector<std::string> words = {"usa", "american", "canada", "canadian",
                                    "france", "french"};
  std::vector<double> delta = {0.1, 0.1, 0.9, 0.1};
  std::vector<std::vector<double>> countries = {
      {1, 0, 0, 0.2}, {0, 1, 0, 0.2}, {0.1, 0, 1, -0.3}};
  std::vector<std::vector<double>> rows;
  for (const auto &c : countries) {
    rows.push_back(c);
    std::vector<double> d = c;
    for (int i = 0; i < 4; ++i) d[i] += delta[i];
    rows.push_back(d);
  }
  EmbeddingModel model = MakeModel(words, rows);
  EXPECT_EQ(model.Analogy("american", "usa", "canada").word, "canadian");
  EXPECT_EQ(model.Analogy("american", "usa", "france").word, "french");
  EXPECT_EQ(model.Analogy("canadian", "canada", "usa").word, "american");
  EXPECT_THROW(model.Analogy("american", "usa", "mexico"), LookupError);
}

TEST(AnalogyTest, MatchesBruteForceArgmax) {
  EmbeddingModel model = RandomModel(8, 6, 21);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      for (int c = 0; c < 8; ++c) {
        std::vector<double> target(6);
        for (int d = 0; d < 6; ++d) {
          target[d] = double(model.Vector(a)[d]) - model.Vector(b)[d] +
                      model.Vector(c)[d];
        }
        double tn = 0;
        for (double x : target) tn += x * x;
        if (tn == 0) continue;
        int best = -1;
        double best_score = -2;
        for (int i = 0; i < 8; ++i) {
          if (i == a || i == b || i == c) continue;
          double dot = 0, n = 0;
          for (int d = 0; d < 6; ++d) {
            dot += target[d] * model.Vector(i)[d];
            n += double(model.Vector(i)[d]) * model.Vector(i)[d];
          }
          double score = dot / std::sqrt(tn * n);
          if (score > best_score) best_score = score, best = i;
        }
        SimilarityHit hit =
            model.Analogy(model.vocab().word(a), model.vocab().word(b),
                          model.vocab().word(c));
        EXPECT_EQ(hit.index, best);
        EXPECT_NEAR(hit.score, best_score, 1e-12);
      }
    }
  }
}

TEST(ModelFileTest, RoundTripPreservesRankings) {
  auto dir = testing::TempDir("model_roundtrip");
  std::string path = (dir / "m.vec").string();
  EmbeddingModel model =
      MakeModel({"x", "y", "z"}, {{0.25, -1.5}, {1e-3, 2.0}, {-0.7, 0.3}});
  model.Save(path);
  EmbeddingModel loaded = EmbeddingModel::Load(path);
  EXPECT_EQ(loaded.vocab().words(), model.vocab().words());
  EXPECT_EQ(loaded.input_vectors(), model.input_vectors());
  EXPECT_EQ(loaded.vocab().total_tokens(), 3);
  for (const char *w : {"x", "y", "z"}) {
    auto a = model.MostSimilar({w}, 2);
    auto b = loaded.MostSimilar({w}, 2);
    for (int i = 0; i < 2; ++i) EXPECT_EQ(a[i].word, b[i].word);
  }
}

TEST(ModelFileTest, PlainVectorFileLoads) {
  auto dir = testing::TempDir("model_plain");
  std::string path = (dir / "pre.txt").string();
  WriteFile(path,
            "5 3\nusa 1 0 0\namerican 1 0 1\ncanada 0 1 0\ncanadian 0 1 "
            "1\nparis 0.5 0.5 0\n");
  EmbeddingModel model = EmbeddingModel::Load(path);
  EXPECT_EQ(model.vocab().size(), 5);
  EXPECT_EQ(model.dim(), 3);
  EXPECT_EQ(model.vocab().count(0), 0);
  EXPECT_EQ(model.Analogy("american", "usa", "canada").word, "canadian");
}

TEST(ModelFileTest, FormatErrorsCarryLineNumbers) {
  auto dir = testing::TempDir("model_errors");
  std::string path = (dir / "bad.txt").string();
  auto expect_line = [&](const std::string &contents, std::size_t line) {
    WriteFile(path, contents);
    try {
      EmbeddingModel::Load(path);
      ADD_FAILURE() << contents;
    } catch (const ParseError &e) {
      EXPECT_EQ(e.line(), line) << contents;
    }
  };
  expect_line("3 2\na 1 2\nb 3 4\n", 4);
  expect_line("1 2\na 1 2\nb 3 4\n", 3);
  expect_line("2 2\na 1 2\nb 3\n", 3);
  expect_line("2 2\na 1 2\nb 3 x\n", 3);
  expect_line("2\n", 1);
  expect_line("2 2\na 1 2\na 3 4\n", 0);
}

}  // namespace
}  // namespace triplescore
