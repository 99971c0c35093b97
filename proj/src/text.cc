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

#include "triplescore/text.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "triplescore/errors.h"

namespace triplescore {

std::string ParseError::Describe(const std::string &message, std::size_t line,
                                 std::size_t offset) {
  std::string result;
  if (line > 0) result += "line " + std::to_string(line) + ": ";
  result += message;
  if (offset != npos) result += " (at byte " + std::to_string(offset) + ")";
  return result;
}

CharSet CharSet::DefaultPunctuation() {
  CharSet set;
  for (int c = 0x21; c < 0x7f; ++c) {
    bool alnum = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                 (c >= 'A' && c <= 'Z');
    if (!alnum && c != '_') set.Add(static_cast<char>(c));
  }
  return set;
}

std::string Lowercase(std::string_view text) {
  std::string result(text);
  for (char &c : result) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return result;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> SplitFields(std::string_view text, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = text.find(delimiter, start);
    if (end == std::string_view::npos) {
      fields.emplace_back(text.substr(start));
      return fields;
    }
    fields.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
}

std::string_view Trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && IsSpace(text[begin])) ++begin;
  while (end > begin && IsSpace(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

std::string Join(const std::vector<std::string> &tokens, std::string_view sep) {
  std::string result;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) result += sep;
    result += tokens[i];
  }
  return result;
}

std::string JoinMultiword(std::string_view term) {
  return Lowercase(Join(SplitWhitespace(term), "_"));
}

std::string NormalizeTerm(std::string_view term, const CharSet &punctuation) {
  std::string spaced(term);
  for (char &c : spaced) {
    if (c == '_' || punctuation.Contains(c)) c = ' ';
  }
  return JoinMultiword(spaced);
}

std::vector<std::string> TermWords(std::string_view normalized_term) {
  std::vector<std::string> words;
  for (auto &word : SplitFields(normalized_term, '_')) {
    if (!word.empty()) words.push_back(std::move(word));
  }
  return words;
}

int RoundHalfAwayFromZero(double value) {
  return static_cast<int>(std::round(value));
}

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("error reading " + path);
  return lines;
}

void WriteFile(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing " + path);
}

}  // namespace triplescore
