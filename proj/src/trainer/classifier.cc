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

#include "mabel/trainer/classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mabel/core/error.h"
#include "mabel/core/ops.h"

namespace mabel {
namespace {

void CheckLabels(const std::vector<int32_t>& labels, size_t classes) {
  for (int32_t y : labels) {
    if (y < 0 || static_cast<size_t>(y) >= classes) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(y) + " outside [0, " +
                      std::to_string(classes) + ")");
    }
  }
}

bool PairInput(const std::vector<TextExample>& examples) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyInput, "no examples");
  const bool pair = examples.front().second.has_value();
  for (const TextExample& e : examples) {
    if (e.second.has_value() != pair) {
      throw Error(ErrorCode::kInvalidConfig, "examples mix sentences and pairs");
    }
  }
  return pair;
}

Var PairFeatures(Var u, Var v) {
  const std::vector<Var> parts = {u, v, ops::Abs(ops::Sub(u, v)), ops::Mul(u, v)};
  return ops::ConcatCols(parts);
}

TokenBatch TokenizeTexts(const EncoderModel& model, const std::vector<std::string>& texts) {
  std::vector<TokenizedText> rows;
  rows.reserve(texts.size());
  for (const std::string& t : texts) {
    rows.push_back(Tokenize(t, model.vocab(), model.config().maxlen));
  }
  return StackTokenized(rows, /*trim=*/true);
}

Var Logits(Var features, Var weight, Var bias) {
  return ops::AddBias(ops::MatMul(features, weight), bias);
}

}  // namespace

Tensor LinearClassifier::Probabilities(const Tensor& features) const {
  Graph graph;
  const Var logits = Logits(graph.Constant(features), graph.Constant(weight),
                            graph.Constant(bias));
  return ops::Softmax(logits).value();
}

std::vector<int32_t> LinearClassifier::Predict(const Tensor& features) const {
  const Tensor probs = Probabilities(features);
  const size_t c = classes();
  std::vector<int32_t> out(probs.size() / c);
  for (size_t i = 0; i < out.size(); ++i) {
    const double* row = probs.data.data() + i * c;
    out[i] = static_cast<int32_t>(std::max_element(row, row + c) - row);
  }
  return out;
}

double LinearClassifier::Accuracy(const Tensor& features,
                                  const std::vector<int32_t>& labels) const {
  const std::vector<int32_t> pred = Predict(features);
  if (pred.size() != labels.size() || labels.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "one label per feature row expected");
  }
  size_t hits = 0;
  for (size_t i = 0; i < pred.size(); ++i) hits += pred[i] == labels[i];
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

LinearClassifier TrainProbe(const Tensor& features, const std::vector<int32_t>& labels,
                            size_t classes, const ProbeConfig& config) {
  if (features.rank() != 2 || features.dim(0) != labels.size() || labels.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "features must be [n, k] with n labels");
  }
  CheckLabels(labels, classes);
  if (std::set<int32_t>(labels.begin(), labels.end()).size() < 2) {
    throw Error(ErrorCode::kDegenerateLabels, "probe needs at least two classes");
  }
  LinearClassifier probe{Tensor::Zeros({features.dim(1), classes}),
                         Tensor::Zeros({classes})};
  for (size_t step = 0; step < config.steps; ++step) {
    Graph graph;
    const Var w = graph.Parameter(probe.weight);
    const Var b = graph.Parameter(probe.bias);
    Var loss =
        ops::CrossEntropyWithLogits(Logits(graph.Constant(features), w, b), labels);
    if (config.l2 > 0.0) loss = ops::Add(loss, ops::Scale(ops::Sum(ops::Square(w)), 0.5 * config.l2));
    graph.Backward(loss);
    const Tensor gw = graph.Grad(w);
    const Tensor gb = graph.Grad(b);
    for (size_t i = 0; i < gw.size(); ++i) probe.weight[i] -= config.lr * gw[i];
    for (size_t i = 0; i < gb.size(); ++i) probe.bias[i] -= config.lr * gb[i];
  }
  return probe;
}

Tensor ExampleFeatures(const EncoderModel& model, const std::vector<TextExample>& examples,
                       Extraction extraction) {
  const bool pair = PairInput(examples);
  std::vector<std::string> firsts, seconds;
  for (const TextExample& e : examples) {
    firsts.push_back(e.first);
    if (pair) seconds.push_back(*e.second);
  }
  const Tensor u = EmbedSentences(model, firsts, extraction);
  if (!pair) return u;
  Graph graph;
  return PairFeatures(graph.Constant(u),
                      graph.Constant(EmbedSentences(model, seconds, extraction)))
      .value();
}

LinearClassifier ProbeEncoder(const EncoderModel& model,
                              const std::vector<TextExample>& examples, size_t classes,
                              const ProbeConfig& config) {
  std::vector<int32_t> labels;
  for (const TextExample& e : examples) labels.push_back(e.label);
  return TrainProbe(ExampleFeatures(model, examples), labels, classes, config);
}

Tensor FineTunedClassifier::Probabilities(const std::vector<TextExample>& examples) const {
  return head.Probabilities(ExampleFeatures(encoder, examples));
}

std::vector<int32_t> FineTunedClassifier::Predict(
    const std::vector<TextExample>& examples) const {
  return head.Predict(ExampleFeatures(encoder, examples));
}

double FineTunedClassifier::Accuracy(const std::vector<TextExample>& examples) const {
  std::vector<int32_t> labels;
  for (const TextExample& e : examples) labels.push_back(e.label);
  return head.Accuracy(ExampleFeatures(encoder, examples), labels);
}

FineTunedClassifier FineTuneClassifier(const EncoderModel& model,
                                       const std::vector<TextExample>& examples,
                                       const ClassifierConfig& config) {
  const bool pair = PairInput(examples);
  const size_t classes = config.head == HeadKind::kNli3Way ? 3 : config.classes;
  if (classes < 2) throw Error(ErrorCode::kInvalidConfig, "head needs >= 2 classes");
  if (config.batch_size == 0) throw Error(ErrorCode::kInvalidConfig, "batch_size must be >= 1");
  std::vector<int32_t> labels;
  for (const TextExample& e : examples) labels.push_back(e.label);
  CheckLabels(labels, classes);

  const size_t d = model.config().hidden;
  const size_t features = pair ? 4 * d : d;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, config.head_init_std);
  FineTunedClassifier out{model,
                          {Tensor::Zeros({features, classes}), Tensor::Zeros({classes})}};
  for (double& w : out.head.weight.data) {
    double v;
    do {
      v = normal(rng);
    } while (std::abs(v) > 2.0 * config.head_init_std);
    w = v;
  }
  std::vector<NamedTensor> head_params = {{"head.weight", out.head.weight},
                                          {"head.bias", out.head.bias}};
  Adam encoder_opt(config.adam, out.encoder.parameters());
  Adam head_opt(config.adam, head_params);
  std::mt19937_64 dropout_rng(config.seed + 1);
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  size_t cursor = order.size();
  for (size_t step = 0; step < config.steps; ++step) {
    std::vector<std::string> firsts, seconds;
    std::vector<int32_t> batch_labels;
    while (batch_labels.size() < std::min(config.batch_size, examples.size())) {
      if (cursor == order.size()) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      const TextExample& e = examples[order[cursor++]];
      firsts.push_back(e.first);
      if (pair) seconds.push_back(*e.second);
      batch_labels.push_back(e.label);
    }
    Graph graph;
    BoundEncoder bound(graph, out.encoder, /*trainable=*/true);
    const ForwardOptions forward{true, &dropout_rng};
    Var x = Encode(bound, TokenizeTexts(out.encoder, firsts), forward).pooled;
    if (pair) {
      x = PairFeatures(x, Encode(bound, TokenizeTexts(out.encoder, seconds), forward).pooled);
    }
    const Var w = graph.Parameter(head_params[0].value);
    const Var b = graph.Parameter(head_params[1].value);
    const Var loss = ops::CrossEntropyWithLogits(Logits(x, w, b), batch_labels);
    graph.Backward(loss);
    std::vector<Tensor> grads;
    for (const Var& v : bound.vars()) grads.push_back(graph.Grad(v));
    encoder_opt.Step(out.encoder.mutable_parameters(), grads);
    head_opt.Step(head_params, {graph.Grad(w), graph.Grad(b)});
  }
  out.head.weight = head_params[0].value;
  out.head.bias = head_params[1].value;
  return out;
}

}  // namespace mabel
