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

#include <fstream>
#include <iomanip>
#include <set>

#include "cli/commands.h"
#include "mabel/cli/app.h"
#include "mabel/core/error.h"
#include "mabel/data/corpus.h"
#include "mabel/metrics/drivers.h"
#include "mabel/trainer/checkpoint.h"

namespace mabel::cli {

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

int Augment(const AugmentOptions& options, std::ostream& out, std::ostream& err) {
  const GenderLexicon lexicon = options.lexicon.empty()
                                    ? GenderLexicon::Builtin()
                                    : GenderLexicon::LoadTsv(options.lexicon);
  std::set<NliLabel> labels;
  for (const std::string& name : options.labels) {
    const auto label = ParseNliLabel(name);
    if (!label) throw Error(ErrorCode::kInvalidConfig, "unknown label '" + name + "'");
    labels.insert(*label);
  }
  const Corpus corpus =
      IngestNliJsonl(options.input, labels, lexicon, options.gender_filter);

  size_t changed_premise = 0, changed_hypothesis = 0;
  for (const AugmentedQuad& q : corpus.quads) {
    changed_premise += !q.premise_unchanged;
    changed_hypothesis += !q.hypothesis_unchanged;
  }
  nlohmann::ordered_json stats;
  stats["read"] = corpus.total_read;
  stats["kept"] = corpus.kept;
  stats["changed_premise"] = changed_premise;
  stats["changed_hypothesis"] = changed_hypothesis;
  stats["lexicon"] = lexicon.Provenance();

  if (options.output.empty()) {
    WriteCorpusJsonl(corpus, out);
    err << stats.dump() << "\n";
  } else {
    std::ofstream file(options.output, std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + options.output);
    WriteCorpusJsonl(corpus, file);
    out << stats.dump() << "\n";
  }
  return kExitOk;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

int Export(const ExportOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<std::string> concepts = options.concepts;
  if (!options.concepts_file.empty()) {
    for (std::string& c : ReadLines(options.concepts_file)) concepts.push_back(std::move(c));
  }
  std::vector<std::string> templates = options.templates;
  if (!options.templates_file.empty()) {
    for (std::string& t : ReadLines(options.templates_file)) templates.push_back(std::move(t));
  }
  if (templates.empty()) throw Error(ErrorCode::kEmptyInput, "empty template list");
  if (concepts.empty()) throw Error(ErrorCode::kEmptyInput, "no concepts to export");

  const EncoderModel model = LoadCheckpoint(options.checkpoint).model;
  const Tensor vectors = EmbedConcepts(
      model, concepts, templates,
      options.extraction == "cls" ? Extraction::kCls : Extraction::kPooled);

  std::ofstream file;
  if (!options.output.empty()) {
    file.open(options.output, std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + options.output);
  }
  std::ostream& csv = options.output.empty() ? out : file;
  const size_t d = vectors.dim(1);
  csv << "concept";
  for (size_t k = 0; k < d; ++k) csv << ",v" << k;
  csv << "\n" << std::setprecision(17);
  for (size_t c = 0; c < concepts.size(); ++c) {
    csv << CsvField(concepts[c]);
    for (size_t k = 0; k < d; ++k) csv << "," << vectors.at(c, k);
    csv << "\n";
  }
  if (!options.output.empty()) {
    err << "wrote " << concepts.size() << " rows of dimension " << d << " to "
        << options.output << "\n";
  }
  return kExitOk;
}

}  // namespace mabel::cli
