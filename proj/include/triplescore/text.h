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

#ifndef TRIPLESCORE_TEXT_H_
#define TRIPLESCORE_TEXT_H_

#include <bitset>
#include <string>
#include <string_view>
#include <vector>

namespace triplescore {

// Set of single-byte characters. Bytes >= 0x80 (UTF-8 continuation and lead
// bytes) can be stored but the default sets never contain them.
class CharSet {
 public:
  CharSet() = default;
  explicit CharSet(std::string_view chars) {
    for (char c : chars) Add(c);
  }

  void Add(char c) { bits_.set(static_cast<unsigned char>(c)); }
  bool Contains(char c) const { return bits_.test(static_cast<unsigned char>(c)); }
  bool Empty() const { return bits_.none(); }

  // ASCII punctuation except '_', which joins multi-word terms.
  static CharSet DefaultPunctuation();

 private:
  std::bitset<256> bits_;
};

// ASCII lowercasing; non-ASCII bytes pass through unchanged.
std::string Lowercase(std::string_view text);

bool IsSpace(char c);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string> SplitFields(std::string_view text, char delimiter);

std::string_view Trim(std::string_view text);

std::string Join(const std::vector<std::string> &tokens, std::string_view sep);

// Trims, collapses internal whitespace runs into a single '_', lowercases.
// "American football player" -> "american_football_player".
std::string JoinMultiword(std::string_view term);

// Canonical token for a name coming from a data file or an annotation span.
// Punctuation is treated as a word separator and '_' as a space, so
// "George W. Bush", "George_W._Bush" and "george w bush" all map to
// "george_w_bush". This is the same token the corpus pipeline produces when
// it joins the words of a multi-word term.
std::string NormalizeTerm(std::string_view term, const CharSet &punctuation);

// The word sequence a normalized term stands for: "united_states" ->
// {"united", "states"}.
std::vector<std::string> TermWords(std::string_view normalized_term);

// Round half away from zero (6.5 -> 7, 3.5 -> 4).
int RoundHalfAwayFromZero(double value);

// Reads all lines of a text file. Strips a trailing '\r' from each line.
std::vector<std::string> ReadLines(const std::string &path);

// Writes text to a file, replacing it.
void WriteFile(const std::string &path, std::string_view contents);

}  // namespace triplescore

#endif  // TRIPLESCORE_TEXT_H_
