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

#include "mabel/text/tokenizer.h"

#include <algorithm>
#include <cctype>

#include "mabel/core/error.h"

namespace mabel {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsPunctuationToken(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), IsPunct);
}

std::vector<TokenSpan> SplitTokens(std::string_view text) {
  std::vector<TokenSpan> spans;
  size_t i = 0;
  while (i < text.size()) {
    if (IsSpace(text[i])) {
      ++i;
    } else if (IsPunct(text[i])) {
      spans.push_back({std::string(1, text[i]), i, i + 1});
      ++i;
    } else {
      const size_t start = i;
      while (i < text.size() && !IsSpace(text[i]) && !IsPunct(text[i])) ++i;
      spans.push_back({std::string(text.substr(start, i - start)), start, i});
    }
  }
  return spans;
}

std::vector<std::string> NormalizedTokens(std::string_view text) {
  std::vector<std::string> out;
  for (const TokenSpan& s : SplitTokens(text)) out.push_back(ToLower(s.text));
  return out;
}

TokenizedText Tokenize(std::string_view text, const Vocabulary& vocab,
                       size_t maxlen) {
  if (maxlen < 3) {
    throw Error(ErrorCode::kOutOfRange, "maxlen must be at least 3");
  }
  std::vector<std::string> tokens = NormalizedTokens(text);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyText, "text has no non-whitespace characters");
  }
  if (tokens.size() > maxlen - 2) tokens.resize(maxlen - 2);
  TokenizedText out;
  out.ids.assign(maxlen, Vocabulary::kPad);
  out.mask.assign(maxlen, 0);
  size_t pos = 0;
  out.ids[pos] = Vocabulary::kCls;
  out.mask[pos++] = 1;
  for (const std::string& tok : tokens) {
    out.ids[pos] = vocab.Id(tok);
    out.mask[pos++] = 1;
  }
  out.ids[pos] = Vocabulary::kSep;
  out.mask[pos] = 1;
  return out;
}

TokenBatch StackTokenized(const std::vector<TokenizedText>& rows, bool trim) {
  TokenBatch batch;
  batch.rows = rows.size();
  if (rows.empty()) return batch;
  size_t cols = rows[0].ids.size();
  for (const TokenizedText& r : rows) {
    if (r.ids.size() != cols) {
      throw Error(ErrorCode::kShapeMismatch, "tokenized rows differ in length");
    }
  }
  if (trim) {
    size_t used = 0;
    for (const TokenizedText& r : rows) {
      for (size_t j = cols; j-- > 0;) {
        if (r.mask[j]) {
          used = std::max(used, j + 1);
          break;
        }
      }
    }
    cols = used;
  }
  batch.cols = cols;
  batch.ids.reserve(batch.rows * cols);
  batch.mask.reserve(batch.rows * cols);
  for (const TokenizedText& r : rows) {
    batch.ids.insert(batch.ids.end(), r.ids.begin(), r.ids.begin() + cols);
    batch.mask.insert(batch.mask.end(), r.mask.begin(), r.mask.begin() + cols);
  }
  return batch;
}

}  // namespace mabel
