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

#include "mabel/cda/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mabel/core/error.h"
#include "mabel/text/tokenizer.h"

namespace mabel {

std::string_view PairSourceName(PairSource source) {
  switch (source) {
    case PairSource::kListed: return "listed";
    case PairSource::kPlural: return "plural";
    case PairSource::kExtension: return "extension";
    case PairSource::kFile: return "file";
  }
  return "unknown";
}

GenderLexicon GenderLexicon::Builtin() {
  std::vector<LexiconPair> pairs = {
      {"man", "woman", PairSource::kListed},
      {"boy", "girl", PairSource::kListed},
      {"he", "she", PairSource::kListed},
      {"father", "mother", PairSource::kListed},
      {"son", "daughter", PairSource::kListed},
      {"guy", "gal", PairSource::kListed},
      {"male", "female", PairSource::kListed},
      {"his", "her", PairSource::kListed},
      {"himself", "herself", PairSource::kListed},
      {"john", "mary", PairSource::kListed},
      {"men", "women", PairSource::kPlural},
      {"boys", "girls", PairSource::kPlural},
      {"fathers", "mothers", PairSource::kPlural},
      {"sons", "daughters", PairSource::kPlural},
      {"guys", "gals", PairSource::kPlural},
      {"males", "females", PairSource::kPlural},
      {"him", "her", PairSource::kExtension},
  };
  return FromPairs(std::move(pairs));
}

GenderLexicon GenderLexicon::FromPairs(std::vector<LexiconPair> pairs) {
  GenderLexicon lex;
  std::map<std::string, std::string, std::less<>> forward;
  for (LexiconPair& p : pairs) {
    p.masculine = ToLower(p.masculine);
    p.feminine = ToLower(p.feminine);
    for (const std::string& w : {p.masculine, p.feminine}) {
      if (SplitTokens(w).size() != 1 || IsPunctuationToken(w)) {
        throw Error(ErrorCode::kMalformedLexicon,
                    "'" + w + "' is not a single word token");
      }
    }
    if (p.masculine == p.feminine) {
      throw Error(ErrorCode::kMalformedLexicon, "'" + p.masculine + "' maps to itself");
    }
    auto [it, inserted] = forward.emplace(p.masculine, p.feminine);
    if (!inserted) {
      if (it->second != p.feminine) {
        throw Error(ErrorCode::kMalformedLexicon,
                    "'" + p.masculine + "' maps to both '" + it->second +
                        "' and '" + p.feminine + "'");
      }
      continue;  // Exact duplicate.
    }
    auto add = [&lex](const std::string& from, const std::string& to) {
      auto& images = lex.images_[from];
      if (std::find(images.begin(), images.end(), to) == images.end()) {
        images.push_back(to);
      }
    };
    add(p.masculine, p.feminine);
    add(p.feminine, p.masculine);
    lex.pairs_.push_back(std::move(p));
  }
  return lex;
}

GenderLexicon GenderLexicon::LoadTsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<LexiconPair> pairs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw Error(ErrorCode::kMalformedLexicon,
                  path + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                      std::to_string(cols.size()));
    }
    pairs.push_back({cols[0], cols[1], PairSource::kFile});
  }
  try {
    return FromPairs(std::move(pairs));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedLexicon, path + ": " + e.what());
  }
}

bool GenderLexicon::Contains(std::string_view word) const {
  return images_.find(ToLower(word)) != images_.end();
}

const std::vector<std::string>& GenderLexicon::Images(std::string_view word) const {
  static const std::vector<std::string> kNone;
  auto it = images_.find(ToLower(word));
  return it == images_.end() ? kNone : it->second;
}

std::optional<std::string> GenderLexicon::Lookup(std::string_view word) const {
  const auto& images = Images(word);
  if (images.empty()) return std::nullopt;
  return images.front();
}

std::string GenderLexicon::Provenance() const {
  std::map<std::string_view, size_t> counts;
  for (const LexiconPair& p : pairs_) ++counts[PairSourceName(p.source)];
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, n] : counts) {
    out << (first ? "" : ", ") << name << "=" << n;
    first = false;
  }
  return out.str();
}

}  // namespace mabel
