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

#ifndef MABEL_CDA_LEXICON_H_
#define MABEL_CDA_LEXICON_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mabel {

// Where a builtin pair came from, so users can tell listed pairs from the
// ones this library adds.
enum class PairSource { kListed, kPlural, kExtension, kFile };

std::string_view PairSourceName(PairSource source);

struct LexiconPair {
  std::string masculine;
  std::string feminine;
  PairSource source = PairSource::kFile;
};

// Bidirectional attribute-word map over lowercase single tokens. A word may
// have several images (the builtin "her" maps to both "his" and "him"); the
// augmenter picks among them from context.
class GenderLexicon {
 public:
  // The listed attribute pairs, their plurals, and the objective-pronoun
  // extension (him, her).
  static GenderLexicon Builtin();
  // masculine<TAB>feminine per line, '#' comments and blank lines ignored.
  // Throws MalformedLexicon on a wrong column count, a multi-token entry, or
  // a left-hand word listed with two different images.
  static GenderLexicon LoadTsv(const std::string& path);
  static GenderLexicon FromPairs(std::vector<LexiconPair> pairs);

  bool Contains(std::string_view word) const;
  // Every image of a (case-insensitive) word, in insertion order.
  const std::vector<std::string>& Images(std::string_view word) const;
  // First image, or nullopt for non-attribute words.
  std::optional<std::string> Lookup(std::string_view word) const;

  const std::vector<LexiconPair>& pairs() const { return pairs_; }
  // One-line summary of pair counts per source.
  std::string Provenance() const;

 private:
  std::vector<LexiconPair> pairs_;
  std::map<std::string, std::vector<std::string>, std::less<>> images_;
};

}  // namespace mabel

#endif  // MABEL_CDA_LEXICON_H_
