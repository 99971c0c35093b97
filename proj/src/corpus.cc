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

#include "triplescore/corpus.h"

#include <algorithm>
#include <istream>

#include "triplescore/errors.h"

namespace triplescore {

AnnotatedSentence ParseAnnotatedSentence(std::string_view line) {
  AnnotatedSentence sentence;
  sentence.raw_text = std::string(line);
  std::string &text = sentence.text;
  text.reserve(line.size());

  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] != '[') {
      text += line[i++];
      continue;
    }
    const std::size_t open = i;
    std::size_t pipe = std::string_view::npos;
    std::size_t j = open + 1;
    for (; j < line.size(); ++j) {
      char c = line[j];
      if (c == '[') throw ParseError("nested '[' in annotation", 0, j);
      if (c == '|') {
        if (pipe != std::string_view::npos) {
          throw ParseError("second '|' in annotation", 0, j);
        }
        pipe = j;
      } else if (c == ']') {
        break;
      } else if (pipe == std::string_view::npos && IsSpace(c)) {
        throw ParseError("whitespace in canonical name", 0, j);
      }
    }
    if (j == line.size()) throw ParseError("unclosed '['", 0, open);
    if (pipe == std::string_view::npos) {
      throw ParseError("annotation without '|'", 0, j);
    }
    if (pipe == open + 1) throw ParseError("empty canonical name", 0, pipe);
    if (j == pipe + 1) throw ParseError("empty surface form", 0, j);

    Mention mention;
    mention.canonical = std::string(line.substr(open + 1, pipe - open - 1));
    mention.surface = std::string(line.substr(pipe + 1, j - pipe - 1));
    mention.position = text.size();
    text += mention.canonical;
    sentence.mentions.push_back(std::move(mention));
    i = j + 1;
  }
  return sentence;
}

std::string RenderAnnotated(const AnnotatedSentence &sentence) {
  std::string out;
  std::size_t cursor = 0;
  for (const Mention &m : sentence.mentions) {
    out.append(sentence.text, cursor, m.position - cursor);
    out += '[';
    out += m.canonical;
    out += '|';
    out += m.surface;
    out += ']';
    cursor = m.position + m.canonical.size();
  }
  out.append(sentence.text, cursor, std::string::npos);
  return out;
}

void PreprocessConfig::Validate() const {
  for (const std::string &term : multiword_terms) {
    if (stopwords.count(Lowercase(term)) > 0) {
      throw ConfigError("term is both a stopword and a multi-word term: " +
                        term);
    }
  }
}

std::unordered_set<std::string> LoadStopwords(const std::string &path) {
  std::unordered_set<std::string> stopwords;
  for (const std::string &line : ReadLines(path)) {
    std::string_view word = Trim(line);
    if (!word.empty()) stopwords.insert(Lowercase(word));
  }
  return stopwords;
}

Preprocessor::Preprocessor(PreprocessConfig config) : config_(std::move(config)) {
  config_.Validate();
  for (const std::string &term : config_.multiword_terms) {
    std::vector<std::string> words = TermWords(term);
    if (words.size() < 2) continue;
    auto &candidates = multiword_index_[words.front()];
    if (std::find(candidates.begin(), candidates.end(), words) ==
        candidates.end()) {
      candidates.push_back(std::move(words));
    }
  }
  for (auto &[first, candidates] : multiword_index_) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto &a, const auto &b) {
                       return a.size() > b.size();
                     });
  }
}

void Preprocessor::AppendRunningText(std::string_view text,
                                     std::vector<std::string> *words) const {
  std::string cleaned = Lowercase(text);
  for (char &c : cleaned) {
    if (config_.punctuation.Contains(c)) {
      c = ' ';
    } else if (config_.strip_digits && c >= '0' && c <= '9') {
      c = ' ';
    }
  }
  for (auto &word : SplitWhitespace(cleaned)) words->push_back(std::move(word));
}

std::vector<std::string> Preprocessor::JoinAndFilter(
    const std::vector<std::string> &words) const {
  std::vector<std::string> tokens = words;
  // Dropping a stopword can make a multi-word term adjacent, so join and
  // filter until nothing changes. Each round that changes anything shrinks
  // the sequence.
  for (;;) {
    std::vector<std::string> joined;
    joined.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size();) {
      auto it = multiword_index_.find(tokens[i]);
      std::size_t matched = 0;
      if (it != multiword_index_.end()) {
        for (const auto &candidate : it->second) {
          if (i + candidate.size() <= tokens.size() &&
              std::equal(candidate.begin(), candidate.end(),
                         tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
            matched = candidate.size();
            joined.push_back(Join(candidate, "_"));
            break;
          }
        }
      }
      if (matched == 0) {
        joined.push_back(tokens[i]);
        matched = 1;
      }
      i += matched;
    }
    std::vector<std::string> filtered;
    filtered.reserve(joined.size());
    for (auto &token : joined) {
      bool underscores_only =
          token.find_first_not_of('_') == std::string::npos;
      if (underscores_only || config_.stopwords.count(token) > 0) continue;
      filtered.push_back(std::move(token));
    }
    bool changed = filtered.size() != tokens.size();
    tokens = std::move(filtered);
    if (!changed) return tokens;
  }
}

std::optional<TokenSentence> Preprocessor::FilterAndTokenize(
    const AnnotatedSentence &sentence) const {
  if (SplitWhitespace(sentence.text).size() < 2) return std::nullopt;

  std::vector<std::string> words;
  std::size_t cursor = 0;
  for (const Mention &m : sentence.mentions) {
    AppendRunningText(
        std::string_view(sentence.text).substr(cursor, m.position - cursor),
        &words);
    std::string entity = NormalizeTerm(m.canonical, config_.punctuation);
    if (!entity.empty()) words.push_back(std::move(entity));
    cursor = m.position + m.canonical.size();
  }
  AppendRunningText(std::string_view(sentence.text).substr(cursor), &words);

  TokenSentence result{JoinAndFilter(words)};
  if (result.tokens.size() < 2) return std::nullopt;
  return result;
}

std::vector<std::string> Preprocessor::Tokenize(std::string_view text) const {
  std::vector<std::string> words;
  AppendRunningText(text, &words);
  return JoinAndFilter(words);
}

std::vector<std::string> Preprocessor::InjectNationalities(
    std::vector<std::string> tokens) const {
  return triplescore::InjectNationalities(std::move(tokens),
                                          config_.nationality_mapping);
}

std::optional<TokenSentence> FilterAndTokenize(const AnnotatedSentence &sentence,
                                               const PreprocessConfig &config) {
  return Preprocessor(config).FilterAndTokenize(sentence);
}

std::vector<std::string> InjectNationalities(std::vector<std::string> tokens,
                                             const NationalityMapping &mapping) {
  if (mapping.empty()) return tokens;
  std::vector<std::string> result;
  result.reserve(tokens.size());
  for (auto &token : tokens) {
    auto demonym = mapping.Demonym(token);
    result.push_back(std::move(token));
    if (demonym) result.emplace_back(*demonym);
  }
  return result;
}

CorpusStats &CorpusStats::operator+=(const CorpusStats &other) {
  lines_read += other.lines_read;
  sentences += other.sentences;
  dropped += other.dropped;
  malformed += other.malformed;
  mentions += other.mentions;
  return *this;
}

std::string CorpusStats::ToString() const {
  return "lines_read=" + std::to_string(lines_read) + "\n" +
         "sentences=" + std::to_string(sentences) + "\n" +
         "dropped=" + std::to_string(dropped) + "\n" +
         "malformed=" + std::to_string(malformed) + "\n" +
         "mentions=" + std::to_string(mentions) + "\n";
}

CorpusStats PreprocessCorpus(
    std::istream &input, const Preprocessor &preprocessor,
    const std::function<void(const TokenSentence &)> &sink) {
  CorpusStats stats;
  std::string line;
  while (std::getline(input, line)) {
    ++stats.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    AnnotatedSentence sentence;
    try {
      sentence = ParseAnnotatedSentence(line);
    } catch (const ParseError &) {
      ++stats.malformed;
      continue;
    }
    stats.mentions += sentence.mentions.size();
    auto tokens = preprocessor.FilterAndTokenize(sentence);
    if (!tokens) {
      ++stats.dropped;
      continue;
    }
    tokens->tokens = preprocessor.InjectNationalities(std::move(tokens->tokens));
    ++stats.sentences;
    sink(*tokens);
  }
  if (input.bad()) throw IoError("error reading corpus input");
  return stats;
}

std::vector<TokenSentence> ReadTokenCorpus(const std::string &path) {
  std::vector<TokenSentence> corpus;
  for (const std::string &line : ReadLines(path)) {
    auto tokens = SplitWhitespace(line);
    if (!tokens.empty()) corpus.push_back(TokenSentence{std::move(tokens)});
  }
  return corpus;
}

}  // namespace triplescore
