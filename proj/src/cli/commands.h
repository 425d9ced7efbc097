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

#ifndef MABEL_CLI_COMMANDS_H_
#define MABEL_CLI_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace mabel::cli {

struct AugmentOptions {
  std::string input;
  std::string output;
  std::string lexicon;
  std::vector<std::string> labels = {"entailment"};
  bool gender_filter = false;
};

struct TrainOptions {
  std::string config;
  nlohmann::json overrides = nlohmann::json::object();
  size_t seed_sweep = 0;
};

struct EvalOptions {
  std::string metric;
  std::vector<std::string> checkpoints;
  std::vector<std::string> inputs;
  std::string items;
  std::string train;
  std::string extraction;  // Empty selects the metric's default.
  std::vector<double> taus = {0.5, 0.7};
  bool mean_of_gaps = false;
  std::string output;
};

struct ExportOptions {
  std::string checkpoint;
  std::vector<std::string> concepts;
  std::string concepts_file;
  std::vector<std::string> templates;
  std::string templates_file;
  std::string extraction = "pooled";
  std::string output;
};

// Each returns an exit status; library errors propagate as exceptions.
int Augment(const AugmentOptions& options, std::ostream& out, std::ostream& err);
int TrainRuns(const TrainOptions& options, std::ostream& out, std::ostream& err);
int Evaluate(const EvalOptions& options, std::ostream& out, std::ostream& err);
int Export(const ExportOptions& options, std::ostream& out, std::ostream& err);

// Non-blank lines of a text file.
std::vector<std::string> ReadLines(const std::string& path);

}  // namespace mabel::cli

#endif  // MABEL_CLI_COMMANDS_H_
