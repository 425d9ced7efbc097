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

#include "mabel/trainer/masking.h"

#include "mabel/core/error.h"
#include "mabel/text/vocabulary.h"

namespace mabel {
namespace {

bool IsCandidate(int32_t id, uint8_t attend) {
  return attend != 0 && id != Vocabulary::kCls && id != Vocabulary::kSep &&
         id != Vocabulary::kPad;
}

}  // namespace

MaskedTokens MaskTokens(const TokenBatch& batch, size_t vocab_size, double mask_prob,
                        std::mt19937_64& rng) {
  if (!(mask_prob > 0.0 && mask_prob < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "mask_prob must lie in (0, 1)");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool has_regular = vocab_size > static_cast<size_t>(Vocabulary::kNumSpecial);
  std::uniform_int_distribution<int32_t> regular(
      Vocabulary::kNumSpecial,
      has_regular ? static_cast<int32_t>(vocab_size) - 1 : Vocabulary::kNumSpecial);

  MaskedTokens out;
  for (size_t i = 0; i < batch.ids.size(); ++i) {
    if (IsCandidate(batch.ids[i], batch.mask[i])) ++out.candidates;
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    out.ids = batch.ids;
    out.positions.clear();
    out.targets.clear();
    out.applied.clear();
    for (size_t i = 0; i < batch.ids.size(); ++i) {
      if (!IsCandidate(batch.ids[i], batch.mask[i])) continue;
      if (unit(rng) >= mask_prob) continue;
      out.positions.push_back(i);
      out.targets.push_back(batch.ids[i]);
      const double r = unit(rng);
      if (r < 0.8 || !has_regular) {
        out.ids[i] = Vocabulary::kMask;
        out.applied.push_back(Corruption::kMask);
      } else if (r < 0.9) {
        out.ids[i] = regular(rng);
        out.applied.push_back(Corruption::kRandom);
      } else {
        out.applied.push_back(Corruption::kKeep);
      }
    }
    if (!out.positions.empty()) return out;
    if (attempt == 0) out.resampled = true;
  }
  out.empty = true;
  return out;
}

MaskedTokens MaskTokens(const TokenBatch& batch, size_t vocab_size, double mask_prob,
                        uint64_t seed) {
  std::mt19937_64 rng(seed);
  return MaskTokens(batch, vocab_size, mask_prob, rng);
}

}  // namespace mabel
