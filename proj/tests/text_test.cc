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

#include <fstream>

#include "test_util.h"
#include "triplescore/errors.h"
#include "triplescore/nationality_mapping.h"
#include "triplescore/text.h"
#include "triplescore/triples.h"

namespace triplescore {
namespace {

const CharSet kPunct = CharSet::DefaultPunctuation();

TEST(TextTest, JoinMultiword) {
  EXPECT_EQ(JoinMultiword("American football player"), "american_football_player");
  EXPECT_EQ(JoinMultiword("singer"), "singer");
  EXPECT_EQ(JoinMultiword("  Law  Professor "), "law_professor");
  EXPECT_EQ(JoinMultiword(""), "");
}

TEST(TextTest, NormalizeTermTreatsPunctuationAsSeparator) {
  EXPECT_EQ(NormalizeTerm("George W. Bush", kPunct), "george_w_bush");
  EXPECT_EQ(NormalizeTerm("George_W._Bush", kPunct), "george_w_bush");
  EXPECT_EQ(NormalizeTerm("george w bush", kPunct), "george_w_bush");
  EXPECT_EQ(NormalizeTerm("Barack Obama", kPunct), "barack_obama");
  EXPECT_EQ(NormalizeTerm("Canadian-American", kPunct), "canadian_american");
  EXPECT_EQ(NormalizeTerm("___", kPunct), "");
}

TEST(TextTest, NormalizeTermIsIdempotent) {
  for (const char *term : {"Law Professor", "A.B.", "x__y", " q "}) {
    std::string once = NormalizeTerm(term, kPunct);
    EXPECT_EQ(NormalizeTerm(once, kPunct), once) << term;
  }
}

TEST(TextTest, TermWords) {
  EXPECT_EQ(TermWords("united_states"),
            (std::vector<std::string>{"united", "states"}));
  EXPECT_EQ(TermWords("singer"), (std::vector<std::string>{"singer"}));
}

TEST(TextTest, SplitHelpers) {
  EXPECT_EQ(SplitWhitespace("  a \t b\n"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(SplitFields("a\t\tb", '\t'),
            (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(Trim("  x y "), "x y");
  EXPECT_EQ(Lowercase("AbC\xc3\x89"), "abc\xc3\x89");
}

TEST(TextTest, RoundHalfAwayFromZero) {
  EXPECT_EQ(RoundHalfAwayFromZero(6.5), 7);
  EXPECT_EQ(RoundHalfAwayFromZero(3.5), 4);
  EXPECT_EQ(RoundHalfAwayFromZero(6.4999), 6);
  EXPECT_EQ(RoundHalfAwayFromZero(0.0), 0);
}

TEST(TextTest, ReadLinesStripsCarriageReturn) {
  auto dir = testing::TempDir("text_lines");
  WriteFile((dir / "f").string(), "a\r\nb\n");
  EXPECT_EQ(ReadLines((dir / "f").string()),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(ReadLines((dir / "missing").string()), IoError);
}

TEST(TriplesTest, ParsesTrainRow) {
  auto rows = ParseTrainLines({"Barack Obama\tPolitician\t7"});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (Triple{"barack_obama", "politician", 7}));
}

TEST(TriplesTest, EmptyInputGivesEmptyList) {
  EXPECT_TRUE(ParseTrainLines({}).empty());
  EXPECT_TRUE(ParseKbLines({""}).empty());
}

TEST(TriplesTest, ScoreOutOfRangeNamesLine) {
  try {
    ParseTrainLines({"a\tb\t3", "c\td\t8"});
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParseTrainLines({"a\tb\t-1"}), ParseError);
  EXPECT_THROW(ParseTrainLines({"a\tb\tseven"}), ParseError);
}

TEST(TriplesTest, WrongColumnCount) {
  EXPECT_THROW(ParseTrainLines({"a\tb"}), ParseError);
  EXPECT_THROW(ParseKbLines({"a\tb\t3"}), ParseError);
  auto kb = ParseKbLines({"Alanis Morissette\tCanada"});
  EXPECT_EQ(kb[0], (Triple{"alanis_morissette", "canada", std::nullopt}));
}

TEST(TriplesTest, SplitTakesCeilingOfFraction) {
  std::vector<Triple> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({"p" + std::to_string(i), "x", 1});
  auto split = SplitTriples(rows, 0.7);
  EXPECT_EQ(split.head.size(), 7u);
  EXPECT_EQ(split.tail.front().person, "p7");
  rows.pop_back();  // 9 rows: ceil(6.3) = 7
  EXPECT_EQ(SplitTriples(rows, 0.7).head.size(), 7u);
  rows.resize(1);
  EXPECT_EQ(SplitTriples(rows, 0.7).head.size(), 1u);
}

TEST(TriplesTest, FormatRoundTrip) {
  std::vector<Triple> rows = {{"a", "b", 3}, {"c", "d", 0}};
  EXPECT_EQ(FormatScoredTriples(rows), "a\tb\t3\nc\td\t0\n");
  EXPECT_THROW(FormatScoredTriples({{"a", "b", std::nullopt}}), ContractError);
}

TEST(TriplesTest, QueryFileAcceptsBothShapes) {
  auto dir = testing::TempDir("query");
  WriteFile((dir / "q").string(), "A\tB\nC\tD\t5\n");
  auto rows = ReadQueryFile((dir / "q").string());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[1].score.has_value());
  WriteFile((dir / "v").string(), "Film Director\n\nSinger\n");
  EXPECT_EQ(ReadValueList((dir / "v").string()),
            (std::vector<std::string>{"film_director", "singer"}));
}

TEST(NationalityMappingTest, SetAndLookup) {
  NationalityMapping mapping;
  mapping.Set("canada", "canadian");
  EXPECT_EQ(mapping.Demonym("canada"), "canadian");
  EXPECT_FALSE(mapping.Demonym("france").has_value());
  EXPECT_THROW(mapping.Set("x", "x"), ContractError);
  EXPECT_THROW(mapping.Set("", "y"), ContractError);
}

TEST(NationalityMappingTest, FileRoundTrip) {
  auto dir = testing::TempDir("mapping");
  std::string path = (dir / "m.tsv").string();
  WriteFile(path, "United States of America\tAmerican\n\nCanada\tCanadian\n");
  NationalityMapping mapping = NationalityMapping::Load(path);
  EXPECT_EQ(mapping.Demonym("united_states_of_america"), "american");
  mapping.Save(path);
  EXPECT_EQ(NationalityMapping::Load(path).pairs(), mapping.pairs());
  WriteFile(path, "Canada\n");
  EXPECT_THROW(NationalityMapping::Load(path), ParseError);
  WriteFile(path, "Canada\tCanadian\ncanada\tcanuck\n");
  EXPECT_THROW(NationalityMapping::Load(path), ParseError);
}

}  // namespace
}  // namespace triplescore
