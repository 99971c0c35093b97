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

#ifndef TRIPLESCORE_CORPUS_H_
#define TRIPLESCORE_CORPUS_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "triplescore/nationality_mapping.h"
#include "triplescore/text.h"

namespace triplescore {

// An entity mention `[canonical|surface]` in a corpus line. `position` is the
// byte offset of the canonical name inside AnnotatedSentence::text.
struct Mention {
  std::string canonical;
  std::string surface;
  std::size_t position = 0;

  bool operator==(const Mention &other) const = default;
};

struct AnnotatedSentence {
  std::string raw_text;  // the input line
  std::string text;      // every span replaced by its canonical name
  std::vector<Mention> mentions;
};

// Replaces every `[X|Y]` span by X. Throws ParseError carrying the byte offset
// of the offending character for unclosed, nested or empty spans, spans
// without '|', and canonical names containing whitespace.
AnnotatedSentence ParseAnnotatedSentence(std::string_view line);

// Inverse of ParseAnnotatedSentence: restores the `[X|Y]` spans.
std::string RenderAnnotated(const AnnotatedSentence &sentence);

struct TokenSentence {
  std::vector<std::string> tokens;

  bool operator==(const TokenSentence &other) const = default;
};

struct PreprocessConfig {
  std::unordered_set<std::string> stopwords;
  CharSet punctuation = CharSet::DefaultPunctuation();
  NationalityMapping nationality_mapping;
  // Normalized multi-word terms ("american_football_player"). Their word
  // sequences are joined into a single token wherever they occur.
  std::vector<std::string> multiword_terms;
  // Removes ASCII digits from running text. Off for the training corpus.
  bool strip_digits = false;

  // Throws ConfigError if a stopword is also a multi-word term.
  void Validate() const;
};

// One stopword per line; trimmed and lowercased, blank lines skipped.
std::unordered_set<std::string> LoadStopwords(const std::string &path);

// Compiled form of a PreprocessConfig. Construct once and reuse across lines.
class Preprocessor {
 public:
  explicit Preprocessor(PreprocessConfig config);

  // Lowercases, splits on whitespace and punctuation, joins multi-word terms,
  // drops stopwords. Mention spans become one entity token each. Returns
  // nullopt if the line has fewer than two words before or after filtering.
  std::optional<TokenSentence> FilterAndTokenize(
      const AnnotatedSentence &sentence) const;

  // Tokenizes plain text (no annotation spans) with the same rules but
  // without the sentence-length drop. Used for per-person documents.
  std::vector<std::string> Tokenize(std::string_view text) const;

  // Inserts the demonym right after each mapped country token.
  std::vector<std::string> InjectNationalities(
      std::vector<std::string> tokens) const;

  const PreprocessConfig &config() const { return config_; }

 private:
  void AppendRunningText(std::string_view text,
                         std::vector<std::string> *words) const;
  std::vector<std::string> JoinAndFilter(
      const std::vector<std::string> &words) const;

  PreprocessConfig config_;
  // First word -> candidate word sequences, longest first.
  std::unordered_map<std::string, std::vector<std::vector<std::string>>>
      multiword_index_;
};

std::optional<TokenSentence> FilterAndTokenize(const AnnotatedSentence &sentence,
                                               const PreprocessConfig &config);

std::vector<std::string> InjectNationalities(std::vector<std::string> tokens,
                                             const NationalityMapping &mapping);

struct CorpusStats {
  std::size_t lines_read = 0;
  std::size_t sentences = 0;  // emitted
  std::size_t dropped = 0;    // well-formed but too short
  std::size_t malformed = 0;  // annotation parse failures
  std::size_t mentions = 0;   // mentions in well-formed lines

  CorpusStats &operator+=(const CorpusStats &other);
  bool operator==(const CorpusStats &other) const = default;

  // `key=value` lines.
  std::string ToString() const;
};

// Streams every valid sentence of `input` (one annotated sentence per line)
// to `sink`, with nationality injection applied. Memory use is independent of
// corpus size. Malformed lines are counted and skipped.
CorpusStats PreprocessCorpus(
    std::istream &input, const Preprocessor &preprocessor,
    const std::function<void(const TokenSentence &)> &sink);

// Reads a materialized token corpus: one sentence per line, tokens separated
// by spaces. Blank lines are skipped.
std::vector<TokenSentence> ReadTokenCorpus(const std::string &path);

}  // namespace triplescore

#endif  // TRIPLESCORE_CORPUS_H_
