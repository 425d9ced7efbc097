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

#ifndef MABEL_TEXT_TOKENIZER_H_
#define MABEL_TEXT_TOKENIZER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mabel/text/vocabulary.h"

namespace mabel {

// A token as it appears in the source text, with its byte range.
struct TokenSpan {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
};

// Splits on whitespace and isolates each ASCII punctuation character as its
// own token. Case is preserved.
std::vector<TokenSpan> SplitTokens(std::string_view text);

// SplitTokens, lowercased.
std::vector<std::string> NormalizedTokens(std::string_view text);

std::string ToLower(std::string_view s);
bool IsPunctuationToken(std::string_view token);

struct TokenizedText {
  std::vector<int32_t> ids;   // Exactly maxlen entries.
  std::vector<uint8_t> mask;  // 1 for non-PAD positions.
};

// [CLS] tokens... [SEP] [PAD]...; tokens truncated to maxlen - 2. Throws
// EmptyText for text without non-whitespace characters.
TokenizedText Tokenize(std::string_view text, const Vocabulary& vocab,
                       size_t maxlen);

// Row-major id matrix with its attention mask.
struct TokenBatch {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<int32_t> ids;
  std::vector<uint8_t> mask;
};

// Stacks tokenized rows. With `trim`, trailing columns that are PAD in every
// row are dropped.
TokenBatch StackTokenized(const std::vector<TokenizedText>& rows, bool trim);

}  // namespace mabel

#endif  // MABEL_TEXT_TOKENIZER_H_
