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

#include <algorithm>
#include <cctype>
#include <set>

#include "mabel/text/tokenizer.h"

namespace mabel {
namespace {

// Tokens after which "her" reads as an object pronoun rather than a
// possessive determiner: function words, auxiliaries and adverbs.
const std::set<std::string, std::less<>>& NonPossessiveFollowers() {
  static const std::set<std::string, std::less<>> kWords = {
      "a", "about", "after", "again", "all", "also", "an", "and", "any", "are",
      "as", "at", "be", "because", "been", "before", "being", "but", "by", "can",
      "could", "did", "do", "does", "down", "each", "every", "for", "from", "had",
      "has", "have", "here", "how", "if", "in", "into", "is", "just", "may",
      "might", "must", "no", "nor", "not", "now", "of", "off", "on", "onto", "or",
      "out", "over", "should", "since", "so", "some", "than", "that", "the",
      "then", "there", "these", "this", "those", "through", "to", "today",
      "tomorrow", "too", "under", "until", "up", "very", "was", "were", "what",
      "when", "where", "which", "while", "who", "why", "will", "with", "would",
      "yesterday", "yet"};
  return kWords;
}

std::string MatchCase(std::string_view original, const std::string& image) {
  const bool has_alpha = std::any_of(original.begin(), original.end(),
                                     [](unsigned char c) { return std::isalpha(c); });
  const bool all_upper =
      has_alpha && std::none_of(original.begin(), original.end(),
                                [](unsigned char c) { return std::islower(c); });
  std::string out = image;
  if (all_upper && original.size() > 1) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (!original.empty() && std::isupper(static_cast<unsigned char>(original[0]))) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::string ChooseImage(const std::vector<std::string>& images,
                        const TokenSpan* next) {
  if (images.size() == 1) return images.front();
  const bool has_his = std::find(images.begin(), images.end(), "his") != images.end();
  const bool has_him = std::find(images.begin(), images.end(), "him") != images.end();
  if (!has_his || !has_him) return images.front();
  const bool possessive = next != nullptr && !IsPunctuationToken(next->text) &&
                          NonPossessiveFollowers().count(ToLower(next->text)) == 0;
  return possessive ? "his" : "him";
}

}  // namespace

std::string_view NliLabelName(NliLabel label) {
  switch (label) {
    case NliLabel::kEntailment: return "entailment";
    case NliLabel::kNeutral: return "neutral";
    case NliLabel::kContradiction: return "contradiction";
  }
  return "entailment";
}

std::optional<NliLabel> ParseNliLabel(std::string_view text) {
  const std::string t = ToLower(text);
  if (t == "entailment" || t == "0") return NliLabel::kEntailment;
  if (t == "neutral" || t == "1") return NliLabel::kNeutral;
  if (t == "contradiction" || t == "2") return NliLabel::kContradiction;
  return std::nullopt;
}

AugmentedSentence AugmentSentence(std::string_view sentence,
                                  const GenderLexicon& lexicon) {
  const std::vector<TokenSpan> spans = SplitTokens(sentence);
  AugmentedSentence out;
  out.text.reserve(sentence.size() + 8);
  size_t cursor = 0;
  for (size_t i = 0; i < spans.size(); ++i) {
    const TokenSpan& span = spans[i];
    const auto& images = lexicon.Images(span.text);
    if (images.empty()) continue;
    const TokenSpan* next = i + 1 < spans.size() ? &spans[i + 1] : nullptr;
    out.text.append(sentence.substr(cursor, span.begin - cursor));
    out.text.append(MatchCase(span.text, ChooseImage(images, next)));
    cursor = span.end;
  }
  out.text.append(sentence.substr(cursor));
  out.changed = out.text != sentence;
  return out;
}

AugmentedQuad AugmentPair(const EntailmentPair& pair,
                          const GenderLexicon& lexicon) {
  AugmentedSentence p = AugmentSentence(pair.premise, lexicon);
  AugmentedSentence h = AugmentSentence(pair.hypothesis, lexicon);
  AugmentedQuad quad;
  quad.premise = pair.premise;
  quad.hypothesis = pair.hypothesis;
  quad.premise_aug = std::move(p.text);
  quad.hypothesis_aug = std::move(h.text);
  quad.premise_unchanged = !p.changed;
  quad.hypothesis_unchanged = !h.changed;
  quad.label = pair.label;
  return quad;
}

}  // namespace mabel
