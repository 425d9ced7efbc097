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

#ifndef MABEL_TRAINER_CLASSIFIER_H_
#define MABEL_TRAINER_CLASSIFIER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mabel/core/tensor.h"
#include "mabel/encoder/encoder.h"
#include "mabel/trainer/adam.h"

namespace mabel {

// Affine softmax classifier over fixed feature vectors.
struct LinearClassifier {
  Tensor weight;  // [features, classes]
  Tensor bias;    // [classes]

  size_t classes() const { return bias.size(); }
  Tensor Probabilities(const Tensor& features) const;  // [n, classes]
  std::vector<int32_t> Predict(const Tensor& features) const;
  double Accuracy(const Tensor& features, const std::vector<int32_t>& labels) const;
};

struct ProbeConfig {
  size_t steps = 500;
  double lr = 0.5;
  double l2 = 0.0;
};

// Multinomial logistic regression by full-batch gradient descent from zero
// weights. Throws DegenerateLabels unless at least two classes occur and
// LabelOutOfRange for labels outside [0, classes).
LinearClassifier TrainProbe(const Tensor& features, const std::vector<int32_t>& labels,
                            size_t classes, const ProbeConfig& config);

// A single sentence, or a premise/hypothesis pair.
struct TextExample {
  std::string first;
  std::optional<std::string> second;
  int32_t label = 0;
};

// Sentence features are pooled vectors; pair features concatenate
// [u, v, |u - v|, u * v] of the two pooled vectors.
Tensor ExampleFeatures(const EncoderModel& model, const std::vector<TextExample>& examples,
                       Extraction extraction = Extraction::kPooled);

// Embeds with a frozen encoder, then trains a probe on the features.
LinearClassifier ProbeEncoder(const EncoderModel& model,
                              const std::vector<TextExample>& examples, size_t classes,
                              const ProbeConfig& config);

enum class HeadKind { kNli3Way, kKWay };

struct ClassifierConfig {
  HeadKind head = HeadKind::kNli3Way;
  size_t classes = 3;  // Ignored for kNli3Way.
  size_t steps = 300;
  size_t batch_size = 16;
  AdamConfig adam{.lr = 1e-3};
  uint64_t seed = 1;
  double head_init_std = 0.02;
};

struct FineTunedClassifier {
  EncoderModel encoder;
  LinearClassifier head;

  Tensor Probabilities(const std::vector<TextExample>& examples) const;
  std::vector<int32_t> Predict(const std::vector<TextExample>& examples) const;
  double Accuracy(const std::vector<TextExample>& examples) const;
};

// Trains encoder and head jointly with cross-entropy on minibatches.
FineTunedClassifier FineTuneClassifier(const EncoderModel& model,
                                       const std::vector<TextExample>& examples,
                                       const ClassifierConfig& config);

}  // namespace mabel

#endif  // MABEL_TRAINER_CLASSIFIER_H_
