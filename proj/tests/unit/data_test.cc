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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mabel/core/error.h"
#include "mabel/data/batch.h"
#include "mabel/data/corpus.h"
#include "mabel/data/synthetic.h"

namespace mabel {
namespace {

std::string WriteTemp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

TEST(IngestTest, FiltersByLabel) {
  const std::string path = WriteTemp(
      "mabel_ingest_labels.jsonl",
      R"({"premise": "A man sings.", "hypothesis": "A person sings.", "label": "entailment"}
{"premise": "A woman runs.", "hypothesis": "She is late.", "label": "neutral"}
{"premise": "The boy eats.", "hypothesis": "A child eats.", "label": "entailment"}
)");
  const Corpus c = IngestNliJsonl(path, {NliLabel::kEntailment},
                                  GenderLexicon::Builtin(), true);
  EXPECT_EQ(c.total_read, 3u);
  EXPECT_EQ(c.kept, 2u);
  for (const auto& q : c.quads) EXPECT_EQ(q.label, NliLabel::kEntailment);
}

TEST(IngestTest, GenderFilterDropsUngenderedPairs) {
  const std::string path = WriteTemp(
      "mabel_ingest_gender.jsonl",
      R"({"premise": "A dog runs.", "hypothesis": "An animal runs.", "label": "entailment"}
{"premise": "A dog runs.", "hypothesis": "He watches.", "label": "entailment"}
)");
  const Corpus filtered =
      IngestNliJsonl(path, AllNliLabels(), GenderLexicon::Builtin(), true);
  ASSERT_EQ(filtered.kept, 1u);
  EXPECT_EQ(filtered.quads[0].hypothesis_aug, "She watches.");
  for (const auto& q : filtered.quads) {
    EXPECT_FALSE(q.premise_unchanged && q.hypothesis_unchanged);
  }
  const Corpus all = IngestNliJsonl(path, AllNliLabels(), GenderLexicon::Builtin(), false);
  EXPECT_EQ(all.kept, 2u);
}

TEST(IngestTest, MapsSnliFieldNames) {
  const std::string path = WriteTemp(
      "mabel_ingest_snli.jsonl",
      R"({"sentence1": "A man sings.", "sentence2": "Someone sings.", "gold_label": "entailment"}
{"sentence1": "A man sings.", "sentence2": "Someone sings.", "gold_label": "-"}
{"sentence1": "A girl sings.", "sentence2": "Nobody sings.", "gold_label": 2}
)");
  const Corpus c = IngestNliJsonl(path, AllNliLabels(), GenderLexicon::Builtin(), true);
  EXPECT_EQ(c.total_read, 3u);
  ASSERT_EQ(c.kept, 2u);
  EXPECT_EQ(c.quads[1].label, NliLabel::kContradiction);
}

TEST(IngestTest, ReportsMalformedLineNumber) {
  const std::string path = WriteTemp(
      "mabel_ingest_bad.jsonl",
      R"({"premise": "A man sings.", "hypothesis": "He sings.", "label": "entailment"}
{"premise": "A man sings.", "label": "entailment"}
)");
  try {
    IngestNliJsonl(path, AllNliLabels(), GenderLexicon::Builtin(), true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  const std::string broken = WriteTemp("mabel_ingest_json.jsonl", "{not json\n");
  EXPECT_EQ(CodeOf([&] {
              IngestNliJsonl(broken, AllNliLabels(), GenderLexicon::Builtin(), true);
            }),
            ErrorCode::kMalformedLine);
}

TEST(IngestTest, EmptyCorpus) {
  const std::string path = WriteTemp("mabel_ingest_empty.jsonl", "");
  EXPECT_EQ(CodeOf([&] {
              IngestNliJsonl(path, AllNliLabels(), GenderLexicon::Builtin(), true);
            }),
            ErrorCode::kEmptyCorpus);
}

TEST(IngestTest, DumpRoundTripsThroughIngest) {
  const SyntheticCorpus syn = GenerateSyntheticCorpus(3, 20, 0.5);
  std::ostringstream dump;
  WriteCorpusJsonl(syn.corpus, dump);
  std::istringstream lines(dump.str());
  std::string line;
  size_t n = 0;
  while (std::getline(lines, line)) {
    const auto obj = nlohmann::json::parse(line);
    EXPECT_EQ(obj["premise_aug"], syn.corpus.quads[n].premise_aug);
    EXPECT_EQ(obj["hypothesis_aug"], syn.corpus.quads[n].hypothesis_aug);
    ++n;
  }
  EXPECT_EQ(n, 20u);
  const std::string path = WriteTemp("mabel_dump.jsonl", dump.str());
  const Corpus again = IngestNliJsonl(path, AllNliLabels(), GenderLexicon::Builtin(), true);
  EXPECT_EQ(again.quads, syn.corpus.quads);
}

double OccupationGenderMutualInformation(const SyntheticCorpus& syn) {
  std::map<std::pair<size_t, int>, double> joint;
  std::map<size_t, double> occ;
  std::map<int, double> gen;
  const double n = static_cast<double>(syn.tags.size());
  for (const SyntheticTag& t : syn.tags) {
    joint[{t.occupation, static_cast<int>(t.gender)}] += 1.0 / n;
    occ[t.occupation] += 1.0 / n;
    gen[static_cast<int>(t.gender)] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [key, p] : joint) {
    mi += p * std::log(p / (occ[key.first] * gen[key.second]));
  }
  return mi;
}

TEST(SyntheticTest, UnbiasedCorpusHasNearZeroMutualInformation) {
  const SyntheticCorpus syn = GenerateSyntheticCorpus(1, 20000, 0.0);
  EXPECT_LT(OccupationGenderMutualInformation(syn), 1e-3);
}

TEST(SyntheticTest, FullyBiasedCorpusPairsEachOccupationWithOneGender) {
  const SyntheticCorpus syn = GenerateSyntheticCorpus(1, 2000, 1.0);
  std::map<size_t, std::set<Gender>> seen;
  for (const SyntheticTag& t : syn.tags) seen[t.occupation].insert(t.gender);
  EXPECT_EQ(seen.size(), SyntheticOccupations().size());
  for (const auto& [o, genders] : seen) {
    EXPECT_EQ(genders.size(), 1u);
    EXPECT_EQ(*genders.begin(), StereotypedGender(o));
  }
}

TEST(SyntheticTest, DeterministicGivenSeed) {
  std::ostringstream a, b, c;
  WriteCorpusJsonl(GenerateSyntheticCorpus(9, 300, 0.7).corpus, a);
  WriteCorpusJsonl(GenerateSyntheticCorpus(9, 300, 0.7).corpus, b);
  WriteCorpusJsonl(GenerateSyntheticCorpus(10, 300, 0.7).corpus, c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(SyntheticTest, QuadsAreGenderedAndWellFormed) {
  const SyntheticCorpus syn = GenerateSyntheticCorpus(2, 200, 1.0);
  for (size_t i = 0; i < syn.corpus.quads.size(); ++i) {
    const AugmentedQuad& q = syn.corpus.quads[i];
    EXPECT_FALSE(q.premise_unchanged);
    EXPECT_EQ(q.hypothesis_unchanged, syn.tags[i].activity % 2 == 0);
    EXPECT_NE(q.premise.find(SyntheticOccupations()[syn.tags[i].occupation]),
              std::string::npos);
  }
  EXPECT_EQ(syn.corpus.quads[0].label, NliLabel::kEntailment);
}

TEST(SyntheticTest, TemplatesAreBalancedAndBiasPairsNeutral) {
  const auto pairs = GenerateNliTemplates(4, 300);
  std::map<NliLabel, int> counts;
  for (const auto& p : pairs) ++counts[p.label];
  EXPECT_EQ(counts[NliLabel::kEntailment], 100);
  EXPECT_EQ(counts[NliLabel::kNeutral], 100);
  EXPECT_EQ(counts[NliLabel::kContradiction], 100);
  const auto bias = BiasNliPairs();
  EXPECT_EQ(bias.size(), 2 * SyntheticOccupations().size() * SyntheticActivities().size());
  for (const auto& p : bias) EXPECT_EQ(p.label, NliLabel::kNeutral);
}

TEST(BatchTest, PartitionSizes) {
  std::vector<std::string> warnings;
  const auto parts = PartitionBatches(10, 4, 0, false, &warnings);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].size(), 4u);
  EXPECT_EQ(parts[1].size(), 4u);
  EXPECT_EQ(parts[2].size(), 2u);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(parts[0], (std::vector<size_t>{0, 1, 2, 3}));

  const auto odd = PartitionBatches(9, 4, 0, false, &warnings);
  EXPECT_EQ(odd.size(), 2u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(BatchTest, RejectsBatchSizeOne) {
  EXPECT_EQ(CodeOf([] { PartitionBatches(10, 1, 0, false, nullptr); }),
            ErrorCode::kBatchTooSmall);
}

TEST(BatchTest, ShuffleIsDeterministicAndCoversEpoch) {
  const auto a = PartitionBatches(37, 5, 42, true, nullptr);
  const auto b = PartitionBatches(37, 5, 42, true, nullptr);
  const auto c = PartitionBatches(37, 5, 43, true, nullptr);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  std::multiset<size_t> seen;
  for (const auto& part : a) seen.insert(part.begin(), part.end());
  EXPECT_EQ(seen.size(), 37u);
  for (size_t i = 0; i < 37; ++i) EXPECT_EQ(seen.count(i), 1u);
}

TEST(BatchTest, AssemblesFourViewsWithExclusionFlags) {
  const SyntheticCorpus syn = GenerateSyntheticCorpus(5, 10, 1.0);
  const Vocabulary vocab = Vocabulary::Build(CorpusSentences(syn.corpus));
  const auto batches = MakeBatches(syn.corpus, vocab, 32, 4, 0, false, nullptr);
  ASSERT_EQ(batches.size(), 3u);
  const Batch& b = batches[0];
  EXPECT_EQ(b.m, 4u);
  EXPECT_EQ(b.views.rows, 16u);
  for (size_t i = 0; i < b.m; ++i) {
    const AugmentedQuad& q = syn.corpus.quads[b.indices[i]];
    EXPECT_EQ(b.exclusion[i], q.hypothesis == q.hypothesis_aug ? 1 : 0);
    const TokenizedText expect = Tokenize(q.premise_aug, vocab, 32);
    for (size_t t = 0; t < b.views.cols; ++t) {
      EXPECT_EQ(b.views.ids[(2 * b.m + i) * b.views.cols + t], expect.ids[t]);
    }
  }
}

}  // namespace
}  // namespace mabel
