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

#include "mabel/data/corpus.h"

#include <fstream>

#include "json.hpp"
#include "mabel/core/error.h"

namespace mabel {
namespace {

using nlohmann::json;

const json* FindField(const json& obj, std::initializer_list<const char*> names) {
  for (const char* name : names) {
    auto it = obj.find(name);
    if (it != obj.end()) return &*it;
  }
  return nullptr;
}

[[noreturn]] void Malformed(const std::string& path, size_t line, const std::string& why) {
  throw Error(ErrorCode::kMalformedLine,
              path + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

const std::set<NliLabel>& AllNliLabels() {
  static const std::set<NliLabel> kAll = {NliLabel::kEntailment, NliLabel::kNeutral,
                                          NliLabel::kContradiction};
  return kAll;
}

Corpus IngestNliJsonl(const std::string& path, const std::set<NliLabel>& labels,
                      const GenderLexicon& lexicon, bool gender_filter) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  Corpus corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      Malformed(path, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) Malformed(path, line_no, "not a JSON object");
    const json* premise = FindField(obj, {"premise", "sentence1"});
    const json* hypothesis = FindField(obj, {"hypothesis", "sentence2"});
    const json* label = FindField(obj, {"label", "gold_label"});
    if (!premise || !premise->is_string()) Malformed(path, line_no, "missing premise");
    if (!hypothesis || !hypothesis->is_string()) {
      Malformed(path, line_no, "missing hypothesis");
    }
    if (!label) Malformed(path, line_no, "missing label");
    std::string label_text;
    if (label->is_string()) {
      label_text = label->get<std::string>();
    } else if (label->is_number_integer()) {
      label_text = std::to_string(label->get<int64_t>());
    } else {
      Malformed(path, line_no, "label must be a string or integer");
    }
    ++corpus.total_read;
    if (label_text == "-" || label_text == "-1") continue;  // No gold label.
    const std::optional<NliLabel> parsed = ParseNliLabel(label_text);
    if (!parsed) Malformed(path, line_no, "unknown label '" + label_text + "'");
    EntailmentPair pair{premise->get<std::string>(), hypothesis->get<std::string>(),
                        *parsed};
    if (pair.premise.find_first_not_of(" \t") == std::string::npos ||
        pair.hypothesis.find_first_not_of(" \t") == std::string::npos) {
      Malformed(path, line_no, "empty sentence");
    }
    if (labels.count(pair.label) == 0) continue;
    AugmentedQuad quad = AugmentPair(pair, lexicon);
    if (gender_filter && quad.premise_unchanged && quad.hypothesis_unchanged) continue;
    corpus.quads.push_back(std::move(quad));
  }
  corpus.kept = corpus.quads.size();
  std::string label_names;
  for (NliLabel l : labels) {
    if (!label_names.empty()) label_names += ",";
    label_names += NliLabelName(l);
  }
  corpus.provenance = path + " labels=" + label_names +
                      " gender_filter=" + (gender_filter ? "true" : "false");
  if (corpus.quads.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                path + ": no pairs kept out of " + std::to_string(corpus.total_read));
  }
  return corpus;
}

void WriteCorpusJsonl(const Corpus& corpus, std::ostream& out) {
  for (const AugmentedQuad& q : corpus.quads) {
    json obj;
    obj["premise"] = q.premise;
    obj["hypothesis"] = q.hypothesis;
    obj["label"] = std::string(NliLabelName(q.label));
    obj["premise_aug"] = q.premise_aug;
    obj["hypothesis_aug"] = q.hypothesis_aug;
    out << obj.dump() << "\n";
  }
}

}  // namespace mabel
