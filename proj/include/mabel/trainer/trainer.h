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

#ifndef MABEL_TRAINER_TRAINER_H_
#define MABEL_TRAINER_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mabel/data/corpus.h"
#include "mabel/encoder/encoder.h"
#include "mabel/objective/losses.h"
#include "mabel/trainer/adam.h"

namespace mabel {

struct TrainConfig {
  ObjectiveConfig objective;
  AdamConfig adam;
  size_t batch_size = 32;
  size_t grad_accum = 1;  // Micro-batches per optimizer step.
  size_t epochs = 2;
  uint64_t seed = 1;
  size_t maxlen = 32;     // Must not exceed the encoder's maxlen.
  double mask_prob = 0.15;
  bool shuffle = true;
  // Held-out alignment gap is measured every eval_every steps when an eval
  // corpus is supplied; 0 disables.
  size_t eval_every = 0;
  // Intermediate checkpoints every N steps; the final one is always written
  // when checkpoint_dir is set.
  size_t checkpoint_every = 0;
  std::string checkpoint_dir;
  std::string run_config_json;  // Stored in every checkpoint.

  void Validate() const;
};

struct StepRecord {
  size_t step = 0;  // 1-based optimizer step.
  size_t epoch = 0;
  double lr = 0.0;
  LossBreakdown loss;
  size_t masked_tokens = 0;
  std::optional<double> held_out_alignment;
};

struct TrainTrace {
  uint64_t seed = 0;
  std::optional<double> initial_alignment;  // Before the first update.
  std::vector<StepRecord> steps;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

struct TrainResult {
  EncoderModel model;
  TrainTrace trace;
  std::vector<std::string> checkpoints;  // Last entry is the final model.
};

// Optimizes the combined objective over epochs x batches. Throws DivergedLoss
// naming the step when any loss or gradient becomes non-finite.
TrainResult Train(EncoderModel model, const Corpus& corpus, const TrainConfig& config,
                  const Corpus* eval_corpus = nullptr,
                  const std::function<void(const StepRecord&)>& on_step = {});

// Loss terms for one batch, evaluation mode, no parameter update.
LossBreakdown EvaluateBatchLoss(const EncoderModel& model, const Corpus& corpus,
                                const std::vector<size_t>& indices,
                                const TrainConfig& config);

// Mean over quads of (cos(p', h') - cos(p, h))^2 on pooled eval-mode vectors.
double MeanAlignmentGap(const EncoderModel& model, const Corpus& corpus);

// One JSON object per step; absent loss terms are omitted.
std::string StepRecordJson(const StepRecord& record);

struct MlmTrainConfig {
  size_t steps = 200;
  size_t batch_size = 16;
  AdamConfig adam{.lr = 1e-3};
  double mask_prob = 0.15;
  uint64_t seed = 1;
};

// Masked-language-model training alone on raw sentences.
EncoderModel TrainMlm(EncoderModel model, const std::vector<std::string>& sentences,
                      const MlmTrainConfig& config);

}  // namespace mabel

#endif  // MABEL_TRAINER_TRAINER_H_
