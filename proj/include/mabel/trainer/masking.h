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

#ifndef MABEL_TRAINER_MASKING_H_
#define MABEL_TRAINER_MASKING_H_

#include <cstdint>
#include <random>
#include <vector>

#include "mabel/text/tokenizer.h"

namespace mabel {

enum class Corruption : uint8_t { kMask, kRandom, kKeep };

struct MaskedTokens {
  std::vector<int32_t> ids;         // Corrupted copy of the input ids.
  std::vector<size_t> positions;    // Flat indices of selected tokens.
  std::vector<int32_t> targets;     // Original ids at `positions`.
  std::vector<Corruption> applied;  // Corruption used at each position.
  size_t candidates = 0;            // Non-special, non-PAD tokens seen.
  bool resampled = false;
  bool empty = false;               // Nothing selected after one resample.
};

// Selects each candidate token independently with probability mask_prob and
// corrupts it: 80% [MASK], 10% a random non-special token, 10% unchanged.
// [CLS], [SEP] and padding are never selected. Throws InvalidConfig unless
// mask_prob lies in (0, 1).
MaskedTokens MaskTokens(const TokenBatch& batch, size_t vocab_size, double mask_prob,
                        std::mt19937_64& rng);
MaskedTokens MaskTokens(const TokenBatch& batch, size_t vocab_size, double mask_prob,
                        uint64_t seed);

}  // namespace mabel

#endif  // MABEL_TRAINER_MASKING_H_
