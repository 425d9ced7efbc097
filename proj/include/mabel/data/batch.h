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

#ifndef MABEL_DATA_BATCH_H_
#define MABEL_DATA_BATCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mabel/data/corpus.h"
#include "mabel/text/tokenizer.h"
#include "mabel/text/vocabulary.h"

namespace mabel {

// m quads tokenized as one 4m-row matrix: premises, hypotheses, augmented
// premises, augmented hypotheses, each block in quad order.
struct Batch {
  size_t m = 0;
  std::vector<size_t> indices;     // Corpus positions of the quads.
  TokenBatch views;
  std::vector<uint8_t> exclusion;  // 1 where hypothesis == hypothesis_aug.
};

// Splits [0, n) into consecutive groups of batch_size after an optional
// seeded shuffle. A final group of one is dropped and reported in `warnings`.
std::vector<std::vector<size_t>> PartitionBatches(size_t n, size_t batch_size,
                                                  uint64_t seed, bool shuffle,
                                                  std::vector<std::string>* warnings);

Batch AssembleBatch(const Corpus& corpus, const std::vector<size_t>& indices,
                    const Vocabulary& vocab, size_t maxlen);

// Throws BatchTooSmall for batch_size < 2.
std::vector<Batch> MakeBatches(const Corpus& corpus, const Vocabulary& vocab,
                               size_t maxlen, size_t batch_size, uint64_t seed,
                               bool shuffle, std::vector<std::string>* warnings);

// All sentences of a corpus, originals and augmentations.
std::vector<std::string> CorpusSentences(const Corpus& corpus);

}  // namespace mabel

#endif  // MABEL_DATA_BATCH_H_
