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

#ifndef MABEL_DATA_SYNTHETIC_H_
#define MABEL_DATA_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mabel/cda/augment.h"
#include "mabel/data/corpus.h"

namespace mabel {

enum class Gender { kMale, kFemale };

// Closed vocabulary of the synthetic corpus.
const std::vector<std::string>& SyntheticOccupations();
const std::vector<std::string>& SyntheticActivities();
// The gender each occupation is skewed towards.
Gender StereotypedGender(size_t occupation);
std::string SubjectWord(Gender gender);
std::string PronounWord(Gender gender);

struct SyntheticTag {
  size_t occupation = 0;
  Gender gender = Gender::kMale;
  size_t activity = 0;
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<SyntheticTag> tags;  // Parallel to corpus.quads.
};

// Templated entailment pairs such as "the woman who is a nurse ate lunch" =>
// "the nurse ate lunch". Each pair draws its occupation uniformly; its gender
// matches the occupation's stereotyped gender with probability
// (1 + bias_strength) / 2.
SyntheticCorpus GenerateSyntheticCorpus(uint64_t seed, size_t n_pairs,
                                        double bias_strength);

// Gender-neutral subject nouns used by the three-way template task.
const std::vector<std::string>& NeutralSubjects();

// Three-way NLI templates over neutral subjects, balanced across labels.
std::vector<EntailmentPair> GenerateNliTemplates(uint64_t seed, size_t n_pairs);

// Gender-word premise against occupation hypothesis; every pair is neutral
// for an unbiased model.
std::vector<EntailmentPair> BiasNliPairs();

// Texts covering every word the synthetic generators can emit, for building
// a vocabulary before any corpus exists.
std::vector<std::string> SyntheticVocabularyTexts();

}  // namespace mabel

#endif  // MABEL_DATA_SYNTHETIC_H_
