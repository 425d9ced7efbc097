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

#ifndef MABEL_ENCODER_ENCODER_H_
#define MABEL_ENCODER_ENCODER_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mabel/core/graph.h"
#include "mabel/core/tensor.h"
#include "mabel/text/tokenizer.h"
#include "mabel/text/vocabulary.h"

namespace mabel {

struct EncoderConfig {
  size_t hidden = 64;
  size_t layers = 2;
  size_t heads = 2;
  size_t ffn = 256;
  size_t maxlen = 32;
  double dropout = 0.1;
  bool tied_mlm = true;
  double layer_norm_eps = 1e-12;

  void Validate() const;
};

// Which vector represents a sentence: the tanh pooler output, or the raw
// last-layer CLS state.
enum class Extraction { kPooled, kCls };

struct NamedTensor {
  std::string name;
  Tensor value;
};

// Bidirectional transformer encoder (post-LN, learned positions) with an MLM
// head and a tanh pooler over the CLS state.
class EncoderModel {
 public:
  // Truncated-normal(0, 0.02) weights, zero biases, unit layer-norm gains.
  static EncoderModel Initialize(const EncoderConfig& config, Vocabulary vocab,
                                 uint64_t seed);
  // Wraps existing parameters; throws ManifestMismatch when names or shapes
  // differ from what the config implies.
  static EncoderModel FromParameters(const EncoderConfig& config,
                                     Vocabulary vocab,
                                     std::vector<NamedTensor> parameters);

  const EncoderConfig& config() const { return config_; }
  const Vocabulary& vocab() const { return vocab_; }
  const std::vector<NamedTensor>& parameters() const { return parameters_; }
  std::vector<NamedTensor>& mutable_parameters() { return parameters_; }
  const Tensor& Param(std::string_view name) const;
  Tensor& MutableParam(std::string_view name);

  // FNV-1a over every parameter's bytes, in manifest order.
  uint64_t ParameterHash() const;

 private:
  EncoderConfig config_;
  Vocabulary vocab_;
  std::vector<NamedTensor> parameters_;
};

// Names and shapes of every parameter, in serialization order.
std::vector<std::pair<std::string, Shape>> ParameterManifest(
    const EncoderConfig& config, size_t vocab_size);

// Parameters placed on a graph, either as trainable leaves or constants.
class BoundEncoder {
 public:
  BoundEncoder(Graph& graph, const EncoderModel& model, bool trainable);

  Graph& graph() const { return *graph_; }
  const EncoderModel& model() const { return *model_; }
  const std::vector<Var>& vars() const { return vars_; }
  Var operator[](std::string_view name) const;
  // Substitutes an existing node for one parameter (same shape required).
  void Rebind(std::string_view name, Var var);

 private:
  Graph* graph_;
  const EncoderModel* model_;
  std::vector<Var> vars_;
};

struct ForwardOptions {
  bool train = false;
  std::mt19937_64* rng = nullptr;  // Required when train and dropout > 0.
};

struct EncodedVars {
  Var token_states;  // [B, T, d]
  Var cls;           // [B, d]
  Var pooled;        // [B, d]
};

EncodedVars Encode(const BoundEncoder& encoder, const TokenBatch& batch,
                   const ForwardOptions& options = {});

// MLM logits for states[..., d] -> [..., |V|].
Var MlmLogits(const BoundEncoder& encoder, Var states);

// Evaluation-mode results as plain tensors.
struct EncodedBatch {
  Tensor token_states;  // [B, T, d]
  Tensor pooled;        // [B, d]
  Tensor cls;           // [B, d]
  std::vector<uint8_t> attention_mask;  // [B * T]
};

EncodedBatch EncodeEval(const EncoderModel& model, const TokenBatch& batch);
Tensor MlmLogitsEval(const EncoderModel& model, const Tensor& token_states);

// Sentence vectors for raw texts, eval mode, one row per text.
Tensor EmbedSentences(const EncoderModel& model,
                      const std::vector<std::string>& texts,
                      Extraction extraction = Extraction::kPooled);

}  // namespace mabel

#endif  // MABEL_ENCODER_ENCODER_H_
