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

#ifndef MABEL_CLI_RUN_CONFIG_H_
#define MABEL_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mabel/encoder/encoder.h"
#include "mabel/trainer/trainer.h"

namespace mabel {

// Flat experiment configuration. Every key has a default; unknown keys are
// rejected with InvalidConfig naming the key.
struct RunConfig {
  // Objective.
  double alpha = 0.05;
  double lambda = 0.1;
  double tau = 0.05;
  std::string align_variant = "al1";
  bool strict_exclusion = false;
  std::vector<std::string> ablate;  // Any of no-cl, no-al, no-mlm.

  // Optimization.
  double lr = 5e-5;
  size_t warmup_steps = 0;
  size_t batch_size = 32;
  size_t grad_accum = 1;
  size_t epochs = 2;
  std::vector<uint64_t> seeds = {1};
  double mask_prob = 0.15;
  size_t maxlen = 32;
  bool shuffle = true;
  size_t eval_every = 0;
  size_t checkpoint_every = 0;

  // Encoder.
  size_t hidden = 64;
  size_t layers = 2;
  size_t heads = 2;
  size_t ffn = 256;
  double dropout = 0.1;
  bool tied_mlm = true;
  std::string init_checkpoint;  // Start from these weights when set.

  // Data. Without train_data a synthetic corpus is generated.
  std::string train_data;
  std::string eval_data;
  std::vector<std::string> labels = {"entailment"};
  bool gender_filter = true;
  std::string lexicon;  // TSV path; empty selects the builtin lexicon.
  std::string vocab;    // Vocabulary file; empty builds one from the data.
  size_t synthetic_pairs = 2000;
  double synthetic_bias = 1.0;
  uint64_t synthetic_seed = 0;
  size_t synthetic_eval_pairs = 0;

  std::string output_dir = "runs";

  // Throws InvalidConfig for unknown keys, wrong types or invalid values.
  static RunConfig FromJson(const nlohmann::json& object);
  nlohmann::ordered_json ToJson() const;

  EncoderConfig Encoder() const;
  // Training configuration for one seed, without checkpoint_dir.
  TrainConfig Training(uint64_t seed) const;
};

// Reads a config file (a JSON object) and applies `overrides` key by key
// before validation. An empty path starts from the defaults.
RunConfig LoadRunConfig(const std::string& path, const nlohmann::json& overrides);

// Parses "key=value", where value is JSON or else a bare string.
std::pair<std::string, nlohmann::json> ParseOverride(const std::string& assignment);

}  // namespace mabel

#endif  // MABEL_CLI_RUN_CONFIG_H_
