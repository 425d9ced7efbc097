//
// Copyright 2026 The MABEL-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "mabel/cda/augment.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"
#include "mabel/cda/lexicon.h"
#include "mabel/core/error.h"
#include "mabel/text/tokenizer.h"

namespace mabel {
namespace {

std::string WriteTemp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

TEST(LexiconTest, BuiltinLookups) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  EXPECT_EQ(lex.Lookup("boy"), "girl");
  EXPECT_EQ(lex.Lookup("Girl"), "boy");
  EXPECT_EQ(lex.Lookup("women"), "men");
  EXPECT_EQ(lex.Lookup("john"), "mary");
  EXPECT_FALSE(lex.Lookup("table").has_value());
  EXPECT_FALSE(lex.Contains("mangle"));
  EXPECT_EQ(lex.Images("her"), (std::vector<std::string>{"his", "him"}));
  EXPECT_EQ(lex.pairs().size(), 17u);
}

TEST(LexiconTest, BuiltinIsSymmetricWhereUnambiguous) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  for (const LexiconPair& p : lex.pairs()) {
    for (const std::string& w : {p.masculine, p.feminine}) {
      if (lex.Images(w).size() != 1) continue;
      const std::string image = *lex.Lookup(w);
      if (lex.Images(image).size() != 1) continue;
      EXPECT_EQ(*lex.Lookup(image), w);
    }
  }
}

TEST(LexiconTest, ProvenanceNamesExtension) {
  const std::string prov = GenderLexicon::Builtin().Provenance();
  EXPECT_NE(prov.find("extension=1"), std::string::npos) << prov;
  EXPECT_NE(prov.find("listed=10"), std::string::npos) << prov;
  EXPECT_NE(prov.find("plural=6"), std::string::npos) << prov;
}

TEST(LexiconTest, LoadsTsvWithComments) {
  const std::string path =
      WriteTemp("mabel_lex_ok.tsv", "# pairs\nking\tqueen\n\nprince\tprincess\n");
  const GenderLexicon lex = GenderLexicon::LoadTsv(path);
  EXPECT_EQ(lex.Lookup("queen"), "king");
  EXPECT_EQ(lex.pairs().size(), 2u);
  EXPECT_EQ(lex.pairs()[0].source, PairSource::kFile);
}

TEST(LexiconTest, RejectsThreeColumns) {
  const std::string path = WriteTemp("mabel_lex_bad.tsv", "king\tqueen\textra\n");
  try {
    GenderLexicon::LoadTsv(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLexicon);
  }
}

TEST(LexiconTest, RejectsConflictingDuplicate) {
  const std::string path =
      WriteTemp("mabel_lex_dup.tsv", "king\tqueen\nking\tprincess\n");
  try {
    GenderLexicon::LoadTsv(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLexicon);
  }
}

TEST(AugmentTest, SwapsGirlToBoy) {
  const auto out = AugmentSentence("The girl ate a bagel.", GenderLexicon::Builtin());
  EXPECT_EQ(out.text, "The boy ate a bagel.");
  EXPECT_TRUE(out.changed);
}

TEST(AugmentTest, LeavesNonAttributeTextAlone) {
  const auto out = AugmentSentence("A dog runs.", GenderLexicon::Builtin());
  EXPECT_EQ(out.text, "A dog runs.");
  EXPECT_FALSE(out.changed);
}

TEST(AugmentTest, ResolvesHerFromContext) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  EXPECT_EQ(AugmentSentence("John gave his son her book.", lex).text,
            "Mary gave her daughter his book.");
  EXPECT_EQ(AugmentSentence("I asked her to come.", lex).text, "I asked him to come.");
  EXPECT_EQ(AugmentSentence("I saw her.", lex).text, "I saw him.");
  EXPECT_EQ(AugmentSentence("I saw her", lex).text, "I saw him");
  EXPECT_EQ(AugmentSentence("I gave her a pen", lex).text, "I gave him a pen");
}

TEST(AugmentTest, PreservesCapitalization) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  EXPECT_EQ(AugmentSentence("He runs.", lex).text, "She runs.");
  EXPECT_EQ(AugmentSentence("HE RUNS", lex).text, "SHE RUNS");
  EXPECT_EQ(AugmentSentence("JOHN and mary", lex).text, "MARY and john");
}

TEST(AugmentTest, MatchesWholeTokensOnly) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  EXPECT_EQ(AugmentSentence("mangle the heap", lex).text, "mangle the heap");
  EXPECT_EQ(AugmentSentence("the man, the woman.", lex).text, "the woman, the man.");
}

TEST(AugmentTest, PreservesSpacingBytes) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  EXPECT_EQ(AugmentSentence("  a  man\tsings ", lex).text, "  a  woman\tsings ");
}

TEST(AugmentTest, PairFlags) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  const AugmentedQuad q1 =
      AugmentPair({"he plays a song", "a song is played", NliLabel::kEntailment}, lex);
  EXPECT_FALSE(q1.premise_unchanged);
  EXPECT_TRUE(q1.hypothesis_unchanged);
  EXPECT_EQ(q1.hypothesis_aug, q1.hypothesis);

  const AugmentedQuad q2 =
      AugmentPair({"She sings", "A woman sings", NliLabel::kEntailment}, lex);
  EXPECT_EQ(q2.premise_aug, "He sings");
  EXPECT_EQ(q2.hypothesis_aug, "A man sings");
  EXPECT_FALSE(q2.premise_unchanged);
  EXPECT_FALSE(q2.hypothesis_unchanged);
}

TEST(AugmentTest, PairTwiceRestoresOriginal) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  const EntailmentPair pair{"The man and his son walk.", "Two males walk.",
                            NliLabel::kNeutral};
  const AugmentedQuad once = AugmentPair(pair, lex);
  const AugmentedQuad twice = AugmentPair(
      {once.premise_aug, once.hypothesis_aug, once.label}, lex);
  EXPECT_EQ(twice.premise_aug, pair.premise);
  EXPECT_EQ(twice.hypothesis_aug, pair.hypothesis);
}

TEST(AugmentTest, ParsesLabels) {
  EXPECT_EQ(ParseNliLabel("entailment"), NliLabel::kEntailment);
  EXPECT_EQ(ParseNliLabel("1"), NliLabel::kNeutral);
  EXPECT_EQ(ParseNliLabel("Contradiction"), NliLabel::kContradiction);
  EXPECT_FALSE(ParseNliLabel("-").has_value());
}

// Random sentences over attribute words, fillers and punctuation. "his" is
// only emitted before a noun so that its image "her" reads as possessive.
std::string RandomSentence(std::mt19937_64& rng, bool allow_her_him) {
  static const std::vector<std::string> kAttribute = {
      "man", "woman", "boy", "girl", "he", "she", "father", "mother", "son",
      "daughter", "guy", "gal", "male", "female", "himself", "herself", "john",
      "mary", "men", "women", "boys", "girls", "fathers", "mothers", "sons",
      "daughters", "guys", "gals", "males", "females"};
  static const std::vector<std::string> kFiller = {
      "the", "a", "runs", "table", "ate", "bagel", "quickly", "mangle", "nurse",
      "to", "is", "book", "hers"};
  static const std::vector<std::string> kNoun = {"book", "dog", "car", "hat"};
  static const std::vector<std::string> kPunct = {".", ",", "!", "?"};
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<int> kind(0, allow_her_him ? 5 : 4);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    std::string word;
    switch (kind(rng)) {
      case 0:
      case 1:
        word = kAttribute[rng() % kAttribute.size()];
        break;
      case 2:
        word = kFiller[rng() % kFiller.size()];
        break;
      case 3:
        word = "his " + kNoun[rng() % kNoun.size()];
        break;
      case 4:
        word = kPunct[rng() % kPunct.size()];
        break;
      default:
        word = rng() % 2 ? "her" : "him";
    }
    if (rng() % 4 == 0) word[0] = static_cast<char>(std::toupper(word[0]));
    if (rng() % 16 == 0) {
      for (char& c : word) c = static_cast<char>(std::toupper(c));
    }
    if (!out.empty()) out += rng() % 5 == 0 ? "  " : " ";
    out += word;
  }
  return out;
}

TEST(AugmentPropertyTest, InvolutionOnUnambiguousText) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string s = RandomSentence(rng, false);
    const std::string once = AugmentSentence(s, lex).text;
    EXPECT_EQ(AugmentSentence(once, lex).text, s) << s << " -> " << once;
  }
}

TEST(AugmentPropertyTest, CoverageCountsAndChangedFlag) {
  const GenderLexicon lex = GenderLexicon::Builtin();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string s = RandomSentence(rng, true);
    const AugmentedSentence out = AugmentSentence(s, lex);
    EXPECT_EQ(out.changed, out.text != s);
    const auto before = SplitTokens(s);
    const auto after = SplitTokens(out.text);
    ASSERT_EQ(before.size(), after.size()) << s;
    for (size_t i = 0; i < before.size(); ++i) {
      const std::string b = ToLower(before[i].text);
      const std::string a = ToLower(after[i].text);
      if (lex.Contains(b)) {
        EXPECT_NE(a, b) << s;
        const auto& images = lex.Images(b);
        EXPECT_NE(std::find(images.begin(), images.end(), a), images.end()) << s;
        const bool upper0 = std::isupper(static_cast<unsigned char>(before[i].text[0]));
        EXPECT_EQ(upper0, static_cast<bool>(std::isupper(
                              static_cast<unsigned char>(after[i].text[0]))));
      } else {
        EXPECT_EQ(before[i].text, after[i].text) << s;
      }
    }
  }
}

}  // namespace
}  // namespace mabel
