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

#include "mabel/data/batch.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "mabel/core/error.h"

namespace mabel {

std::vector<std::vector<size_t>> PartitionBatches(size_t n, size_t batch_size,
                                                  uint64_t seed, bool shuffle,
                                                  std::vector<std::string>* warnings) {
  if (batch_size < 2) {
    throw Error(ErrorCode::kBatchTooSmall,
                "batch_size " + std::to_string(batch_size) + " < 2");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  if (shuffle) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<std::vector<size_t>> out;
  for (size_t start = 0; start < n; start += batch_size) {
    const size_t end = std::min(n, start + batch_size);
    if (end - start < 2) {
      if (warnings) {
        warnings->push_back("dropped final batch of size 1 (quad " +
                            std::to_string(order[start]) + ")");
      }
      break;
    }
    out.emplace_back(order.begin() + start, order.begin() + end);
  }
  return out;
}

Batch AssembleBatch(const Corpus& corpus, const std::vector<size_t>& indices,
                    const Vocabulary& vocab, size_t maxlen) {
  Batch batch;
  batch.m = indices.size();
  batch.indices = indices;
  std::vector<TokenizedText> rows;
  rows.reserve(4 * batch.m);
  for (int view = 0; view < 4; ++view) {
    for (size_t idx : indices) {
      const AugmentedQuad& q = corpus.quads.at(idx);
      const std::string& text = view == 0   ? q.premise
                                : view == 1 ? q.hypothesis
                                : view == 2 ? q.premise_aug
                                            : q.hypothesis_aug;
      rows.push_back(Tokenize(text, vocab, maxlen));
    }
  }
  batch.views = StackTokenized(rows, /*trim=*/true);
  for (size_t idx : indices) {
    const AugmentedQuad& q = corpus.quads[idx];
    batch.exclusion.push_back(q.hypothesis == q.hypothesis_aug ? 1 : 0);
  }
  return batch;
}

std::vector<Batch> MakeBatches(const Corpus& corpus, const Vocabulary& vocab,
                               size_t maxlen, size_t batch_size, uint64_t seed,
                               bool shuffle, std::vector<std::string>* warnings) {
  std::vector<Batch> out;
  for (const auto& indices :
       PartitionBatches(corpus.quads.size(), batch_size, seed, shuffle, warnings)) {
    out.push_back(AssembleBatch(corpus, indices, vocab, maxlen));
  }
  return out;
}

std::vector<std::string> CorpusSentences(const Corpus& corpus) {
  std::vector<std::string> out;
  out.reserve(4 * corpus.quads.size());
  for (const AugmentedQuad& q : corpus.quads) {
    out.push_back(q.premise);
    out.push_back(q.hypothesis);
    out.push_back(q.premise_aug);
    out.push_back(q.hypothesis_aug);
  }
  return out;
}

}  // namespace mabel
