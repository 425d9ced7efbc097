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

#ifndef MABEL_DATA_CORPUS_H_
#define MABEL_DATA_CORPUS_H_

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "mabel/cda/augment.h"
#include "mabel/cda/lexicon.h"

namespace mabel {

struct Corpus {
  std::vector<AugmentedQuad> quads;
  std::string provenance;
  size_t total_read = 0;
  size_t kept = 0;
};

const std::set<NliLabel>& AllNliLabels();

// Reads one JSON object per line. Accepts premise/hypothesis/label as well as
// the SNLI/MNLI names sentence1/sentence2/gold_label; labels may be strings or
// the integer codes 0/1/2. Pairs without a gold label ("-") are skipped.
// Throws MalformedLine (with the 1-based line number) and EmptyCorpus.
Corpus IngestNliJsonl(const std::string& path, const std::set<NliLabel>& labels,
                      const GenderLexicon& lexicon, bool gender_filter);

// One JSON object per quad with premise_aug and hypothesis_aug added.
void WriteCorpusJsonl(const Corpus& corpus, std::ostream& out);

}  // namespace mabel

#endif  // MABEL_DATA_CORPUS_H_
