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

#ifndef MABEL_TEXT_VOCABULARY_H_
#define MABEL_TEXT_VOCABULARY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mabel {

// Dense token <-> id map. The five special tokens always occupy ids 0..4.
class Vocabulary {
 public:
  static constexpr int32_t kCls = 0;
  static constexpr int32_t kSep = 1;
  static constexpr int32_t kMask = 2;
  static constexpr int32_t kPad = 3;
  static constexpr int32_t kUnk = 4;
  static constexpr int32_t kNumSpecial = 5;

  // Special tokens only.
  Vocabulary();

  // Specials followed by every token of `texts` seen at least `min_frequency`
  // times, ordered by descending count then lexicographically.
  static Vocabulary Build(const std::vector<std::string>& texts,
                          size_t min_frequency = 1);
  // One token per line, line number = id; the first five lines must be the
  // special tokens.
  static Vocabulary Load(const std::string& path);
  static Vocabulary FromTokens(const std::vector<std::string>& tokens);
  void Save(const std::string& path) const;

  // Appends a token if absent; returns its id.
  int32_t Add(std::string_view token);

  int32_t Id(std::string_view token) const;  // kUnk when absent.
  bool Contains(std::string_view token) const;
  const std::string& Token(int32_t id) const { return tokens_.at(id); }
  size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int32_t> index_;
};

}  // namespace mabel

#endif  // MABEL_TEXT_VOCABULARY_H_
