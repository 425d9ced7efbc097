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

#include "mabel/text/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "mabel/core/error.h"
#include "mabel/text/tokenizer.h"

namespace mabel {
namespace {

const char* const kSpecialTokens[] = {"[CLS]", "[SEP]", "[MASK]", "[PAD]", "[UNK]"};

}  // namespace

Vocabulary::Vocabulary() {
  for (const char* t : kSpecialTokens) Add(t);
}

Vocabulary Vocabulary::Build(const std::vector<std::string>& texts,
                             size_t min_frequency) {
  std::map<std::string, size_t> counts;
  for (const std::string& text : texts) {
    for (std::string& tok : NormalizedTokens(text)) ++counts[std::move(tok)];
  }
  std::vector<std::pair<std::string, size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  for (const auto& [token, count] : ranked) {
    if (count >= min_frequency) vocab.Add(token);
  }
  return vocab;
}

Vocabulary Vocabulary::FromTokens(const std::vector<std::string>& tokens) {
  if (tokens.size() < kNumSpecial) {
    throw Error(ErrorCode::kMalformedLine, "vocabulary lacks special tokens");
  }
  for (int32_t i = 0; i < kNumSpecial; ++i) {
    if (tokens[i] != kSpecialTokens[i]) {
      throw Error(ErrorCode::kMalformedLine,
                  "vocabulary line " + std::to_string(i + 1) + " must be " +
                      kSpecialTokens[i]);
    }
  }
  Vocabulary vocab;
  for (size_t i = kNumSpecial; i < tokens.size(); ++i) {
    if (vocab.Contains(tokens[i])) {
      throw Error(ErrorCode::kMalformedLine,
                  "duplicate vocabulary token '" + tokens[i] + "'");
    }
    vocab.Add(tokens[i]);
  }
  return vocab;
}

Vocabulary Vocabulary::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  return FromTokens(tokens);
}

void Vocabulary::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  for (const std::string& t : tokens_) out << t << '\n';
}

int32_t Vocabulary::Add(std::string_view token) {
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<int32_t>(tokens_.size());
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

int32_t Vocabulary::Id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::Contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

}  // namespace mabel
