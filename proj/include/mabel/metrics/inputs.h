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

#ifndef MABEL_METRICS_INPUTS_H_
#define MABEL_METRICS_INPUTS_H_

#include <string>
#include <vector>

#include "mabel/metrics/scores.h"

namespace mabel {

// Every loader throws MalformedItemFile naming the file and line on schema
// violations, and Io when the file cannot be read.

struct StereoSetRecord {
  std::string context;  // Contains exactly one "BLANK".
  std::string stereotype;
  std::string anti_stereotype;
  std::string unrelated;
};
std::vector<StereoSetRecord> LoadStereoSetFile(const std::string& path);

struct CrowsRecord {
  std::string sent_more;
  std::string sent_less;
};
std::vector<CrowsRecord> LoadCrowsFile(const std::string& path);

// CSV with header "gender,true,pred,<class>,<class>,..."; class cells may be
// names from the header or 0-based indices; gender is M or F.
struct ClassifiedFile {
  std::vector<std::string> classes;
  std::vector<ClassifiedExample> examples;
};
ClassifiedFile LoadClassifiedCsv(const std::string& path);

// CSV rows p_entail,p_neutral,p_contradict; a non-numeric first row is read
// as a header.
std::vector<NliDistribution> LoadNliCsv(const std::string& path);

// {"type1": {"pro": x, "anti": y}, "type2": {...}}, in key order.
struct WinobiasEntry {
  std::string type;
  double pro = 0.0;
  double anti = 0.0;
};
std::vector<WinobiasEntry> LoadWinobiasJson(const std::string& path);

// {"targets_x": [...], "targets_y": [...], "attributes_a": [...],
//  "attributes_b": [...], "templates": [...]}; templates are optional and
// contain "BLANK".
struct SeatSpec {
  std::vector<std::string> targets_x;
  std::vector<std::string> targets_y;
  std::vector<std::string> attributes_a;
  std::vector<std::string> attributes_b;
  std::vector<std::string> templates;
};
SeatSpec LoadSeatFile(const std::string& path);

// JSONL {"text": s, "label": c} or {"premise": p, "hypothesis": h, "label": c},
// with optional "gender" (M/F). Labels may be strings or integers; without
// `require_label` a missing label is left empty.
struct LabeledRecord {
  std::string first;
  std::string second;  // Empty for single sentences.
  std::string label;
  std::string gender;
};
std::vector<LabeledRecord> LoadLabeledJsonl(const std::string& path,
                                            bool require_label = true);

}  // namespace mabel

#endif  // MABEL_METRICS_INPUTS_H_
