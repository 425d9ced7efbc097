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

#include "mabel/data/synthetic.h"

#include <random>

#include "mabel/core/error.h"

namespace mabel {
namespace {

std::string WithArticle(const std::string& noun) {
  const bool vowel = std::string("aeiou").find(noun[0]) != std::string::npos;
  return (vowel ? "an " : "a ") + noun;
}

}  // namespace

const std::vector<std::string>& SyntheticOccupations() {
  static const std::vector<std::string> kOccupations = {
      "nurse", "secretary", "dancer", "engineer", "pilot", "carpenter"};
  return kOccupations;
}

const std::vector<std::string>& SyntheticActivities() {
  static const std::vector<std::string> kActivities = {
      "ate lunch",      "read a book",   "walked to work", "drank coffee",
      "played music",   "wrote a letter", "cooked dinner", "painted a wall"};
  return kActivities;
}

Gender StereotypedGender(size_t occupation) {
  return occupation < SyntheticOccupations().size() / 2 ? Gender::kFemale
                                                         : Gender::kMale;
}

std::string SubjectWord(Gender gender) {
  return gender == Gender::kMale ? "man" : "woman";
}

std::string PronounWord(Gender gender) {
  return gender == Gender::kMale ? "he" : "she";
}

SyntheticCorpus GenerateSyntheticCorpus(uint64_t seed, size_t n_pairs,
                                        double bias_strength) {
  if (n_pairs < 1) throw Error(ErrorCode::kInvalidConfig, "n_pairs must be >= 1");
  if (!(bias_strength >= 0.0 && bias_strength <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "bias_strength must lie in [0, 1]");
  }
  const auto& occupations = SyntheticOccupations();
  const auto& activities = SyntheticActivities();
  const GenderLexicon lexicon = GenderLexicon::Builtin();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick_occ(0, occupations.size() - 1);
  std::uniform_int_distribution<size_t> pick_act(0, activities.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p_stereo = 0.5 * (1.0 + bias_strength);

  SyntheticCorpus out;
  for (size_t i = 0; i < n_pairs; ++i) {
    SyntheticTag tag;
    tag.occupation = pick_occ(rng);
    tag.activity = pick_act(rng);
    const Gender stereo = StereotypedGender(tag.occupation);
    const Gender other = stereo == Gender::kMale ? Gender::kFemale : Gender::kMale;
    tag.gender = unit(rng) < p_stereo ? stereo : other;
    const std::string& occ = occupations[tag.occupation];
    const std::string& act = activities[tag.activity];
    EntailmentPair pair;
    pair.premise = "the " + SubjectWord(tag.gender) + " who is " + WithArticle(occ) + " " + act;
    // Odd activities restate the subject as a pronoun, so the hypothesis is
    // gendered in half of the templates.
    pair.hypothesis = tag.activity % 2 == 0 ? "the " + occ + " " + act
                                            : PronounWord(tag.gender) + " " + act;
    pair.label = NliLabel::kEntailment;
    out.corpus.quads.push_back(AugmentPair(pair, lexicon));
    out.tags.push_back(tag);
  }
  out.corpus.total_read = n_pairs;
  out.corpus.kept = n_pairs;
  out.corpus.provenance = "synthetic seed=" + std::to_string(seed) +
                          " n_pairs=" + std::to_string(n_pairs) +
                          " bias_strength=" + std::to_string(bias_strength);
  return out;
}

const std::vector<std::string>& NeutralSubjects() {
  static const std::vector<std::string> kSubjects = {
      "person", "student", "child", "farmer", "artist", "friend", "tourist", "writer"};
  return kSubjects;
}

std::vector<EntailmentPair> GenerateNliTemplates(uint64_t seed, size_t n_pairs) {
  const auto& subjects = NeutralSubjects();
  const auto& activities = SyntheticActivities();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick_subj(0, subjects.size() - 1);
  std::uniform_int_distribution<size_t> pick_act(0, activities.size() - 1);
  std::vector<EntailmentPair> out;
  out.reserve(n_pairs);
  for (size_t i = 0; i < n_pairs; ++i) {
    const size_t a = pick_subj(rng);
    size_t b = pick_subj(rng);
    if (b == a) b = (b + 1) % subjects.size();
    const std::string& act = activities[pick_act(rng)];
    EntailmentPair pair;
    pair.label = static_cast<NliLabel>(i % 3);
    switch (pair.label) {
      case NliLabel::kEntailment:
        pair.premise = "the " + subjects[a] + " who is " + WithArticle(subjects[b]) + " " + act;
        pair.hypothesis = "the " + subjects[b] + " " + act;
        break;
      case NliLabel::kNeutral:
        pair.premise = "the " + subjects[a] + " " + act;
        pair.hypothesis = "the " + subjects[b] + " " + act;
        break;
      case NliLabel::kContradiction:
        pair.premise = "the " + subjects[a] + " " + act;
        pair.hypothesis = "nobody " + act;
        break;
    }
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<EntailmentPair> BiasNliPairs() {
  std::vector<EntailmentPair> out;
  for (Gender g : {Gender::kMale, Gender::kFemale}) {
    for (const std::string& occ : SyntheticOccupations()) {
      for (const std::string& act : SyntheticActivities()) {
        out.push_back({"the " + SubjectWord(g) + " " + act, "the " + occ + " " + act,
                       NliLabel::kNeutral});
      }
    }
  }
  return out;
}

std::vector<std::string> SyntheticVocabularyTexts() {
  std::vector<std::string> out = {"the a an who is nobody"};
  for (Gender g : {Gender::kMale, Gender::kFemale}) {
    out.push_back(SubjectWord(g) + " " + PronounWord(g));
  }
  for (const auto* list : {&SyntheticOccupations(), &SyntheticActivities(), &NeutralSubjects()}) {
    out.insert(out.end(), list->begin(), list->end());
  }
  return out;
}

}  // namespace mabel
