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

#ifndef MABEL_CDA_AUGMENT_H_
#define MABEL_CDA_AUGMENT_H_

#include <optional>
#include <string>
#include <string_view>

#include "mabel/cda/lexicon.h"

namespace mabel {

enum class NliLabel { kEntailment, kNeutral, kContradiction };

std::string_view NliLabelName(NliLabel label);
// Accepts the label strings and the SNLI/MNLI integer codes 0/1/2.
std::optional<NliLabel> ParseNliLabel(std::string_view text);

struct EntailmentPair {
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::kEntailment;
};

// A pair together with its gender-swapped counterpart.
struct AugmentedQuad {
  std::string premise;
  std::string hypothesis;
  std::string premise_aug;
  std::string hypothesis_aug;
  bool premise_unchanged = true;
  bool hypothesis_unchanged = true;
  NliLabel label = NliLabel::kEntailment;

  friend bool operator==(const AugmentedQuad&, const AugmentedQuad&) = default;
};

struct AugmentedSentence {
  std::string text;
  bool changed = false;
};

// Swaps every lexicon token for its opposite-gender image. Non-attribute
// bytes are copied verbatim and each swapped token keeps the capitalization
// pattern of the original. "her" becomes "his" when the next token looks
// like a noun phrase head, otherwise "him".
AugmentedSentence AugmentSentence(std::string_view sentence,
                                  const GenderLexicon& lexicon);

AugmentedQuad AugmentPair(const EntailmentPair& pair,
                          const GenderLexicon& lexicon);

}  // namespace mabel

#endif  // MABEL_CDA_AUGMENT_H_
