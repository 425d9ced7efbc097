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

#include "mabel/encoder/encoder.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mabel/core/error.h"
#include "mabel/core/ops.h"

namespace mabel {
namespace {

std::string LayerName(size_t layer, std::string_view suffix) {
  return "layer." + std::to_string(layer) + "." + std::string(suffix);
}

bool IsWeightMatrix(const std::string& name) {
  const std::string_view n(name);
  return n.ends_with(".weight") || n == "embeddings.token" ||
         n == "embeddings.position";
}

bool IsLayerNormGain(const std::string& name) {
  return std::string_view(name).ends_with(".gain");
}

}  // namespace

void EncoderConfig::Validate() const {
  if (hidden == 0 || layers == 0 || heads == 0 || ffn == 0) {
    throw Error(ErrorCode::kInvalidConfig, "model dimensions must be positive");
  }
  if (hidden % heads != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "hidden size " + std::to_string(hidden) +
                    " is not divisible by heads " + std::to_string(heads));
  }
  if (maxlen < 3) throw Error(ErrorCode::kInvalidConfig, "maxlen must be >= 3");
  if (dropout < 0.0 || dropout >= 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "dropout must lie in [0, 1)");
  }
}

std::vector<std::pair<std::string, Shape>> ParameterManifest(
    const EncoderConfig& c, size_t vocab_size) {
  std::vector<std::pair<std::string, Shape>> m;
  const size_t d = c.hidden;
  m.push_back({"embeddings.token", {vocab_size, d}});
  m.push_back({"embeddings.position", {c.maxlen, d}});
  m.push_back({"embeddings.ln.gain", {d}});
  m.push_back({"embeddings.ln.bias", {d}});
  for (size_t l = 0; l < c.layers; ++l) {
    for (const char* proj : {"attn.query", "attn.key", "attn.value", "attn.output"}) {
      m.push_back({LayerName(l, std::string(proj) + ".weight"), {d, d}});
      m.push_back({LayerName(l, std::string(proj) + ".bias"), {d}});
    }
    m.push_back({LayerName(l, "attn_ln.gain"), {d}});
    m.push_back({LayerName(l, "attn_ln.bias"), {d}});
    m.push_back({LayerName(l, "ffn.in.weight"), {d, c.ffn}});
    m.push_back({LayerName(l, "ffn.in.bias"), {c.ffn}});
    m.push_back({LayerName(l, "ffn.out.weight"), {c.ffn, d}});
    m.push_back({LayerName(l, "ffn.out.bias"), {d}});
    m.push_back({LayerName(l, "ffn_ln.gain"), {d}});
    m.push_back({LayerName(l, "ffn_ln.bias"), {d}});
  }
  m.push_back({"mlm.transform.weight", {d, d}});
  m.push_back({"mlm.transform.bias", {d}});
  m.push_back({"mlm.ln.gain", {d}});
  m.push_back({"mlm.ln.bias", {d}});
  if (!c.tied_mlm) m.push_back({"mlm.decoder.weight", {d, vocab_size}});
  m.push_back({"mlm.decoder.bias", {vocab_size}});
  m.push_back({"pooler.weight", {d, d}});
  m.push_back({"pooler.bias", {d}});
  return m;
}

EncoderModel EncoderModel::Initialize(const EncoderConfig& config,
                                      Vocabulary vocab, uint64_t seed) {
  config.Validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.02);
  std::vector<NamedTensor> params;
  for (auto& [name, shape] : ParameterManifest(config, vocab.size())) {
    Tensor t(shape);
    if (IsWeightMatrix(name)) {
      for (double& v : t.data) {
        do {
          v = normal(rng);
        } while (std::fabs(v) > 0.04);
      }
    } else if (IsLayerNormGain(name)) {
      for (double& v : t.data) v = 1.0;
    }
    params.push_back({name, std::move(t)});
  }
  return FromParameters(config, std::move(vocab), std::move(params));
}

EncoderModel EncoderModel::FromParameters(const EncoderConfig& config,
                                          Vocabulary vocab,
                                          std::vector<NamedTensor> parameters) {
  config.Validate();
  const auto manifest = ParameterManifest(config, vocab.size());
  if (manifest.size() != parameters.size()) {
    throw Error(ErrorCode::kManifestMismatch,
                "expected " + std::to_string(manifest.size()) +
                    " parameters, got " + std::to_string(parameters.size()));
  }
  for (size_t i = 0; i < manifest.size(); ++i) {
    if (manifest[i].first != parameters[i].name ||
        manifest[i].second != parameters[i].value.shape) {
      throw Error(ErrorCode::kManifestMismatch,
                  "parameter " + std::to_string(i) + " is " + parameters[i].name +
                      ShapeToString(parameters[i].value.shape) + ", expected " +
                      manifest[i].first + ShapeToString(manifest[i].second));
    }
    if (!parameters[i].value.AllFinite()) {
      throw Error(ErrorCode::kNonFinite, "parameter " + parameters[i].name);
    }
  }
  EncoderModel model;
  model.config_ = config;
  model.vocab_ = std::move(vocab);
  model.parameters_ = std::move(parameters);
  return model;
}

const Tensor& EncoderModel::Param(std::string_view name) const {
  for (const NamedTensor& p : parameters_) {
    if (p.name == name) return p.value;
  }
  throw Error(ErrorCode::kManifestMismatch, "no parameter " + std::string(name));
}

Tensor& EncoderModel::MutableParam(std::string_view name) {
  return const_cast<Tensor&>(std::as_const(*this).Param(name));
}

uint64_t EncoderModel::ParameterHash() const {
  uint64_t h = 1469598103934665603ULL;
  for (const NamedTensor& p : parameters_) {
    for (double v : p.value.data) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
      }
    }
  }
  return h;
}

BoundEncoder::BoundEncoder(Graph& graph, const EncoderModel& model,
                           bool trainable)
    : graph_(&graph), model_(&model) {
  vars_.reserve(model.parameters().size());
  for (const NamedTensor& p : model.parameters()) {
    vars_.push_back(trainable ? graph.Parameter(p.value) : graph.Constant(p.value));
  }
}

Var BoundEncoder::operator[](std::string_view name) const {
  const auto& params = model_->parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    if (params[i].name == name) return vars_[i];
  }
  throw Error(ErrorCode::kManifestMismatch, "no parameter " + std::string(name));
}

void BoundEncoder::Rebind(std::string_view name, Var var) {
  const auto& params = model_->parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    if (params[i].name == name) {
      if (var.shape() != params[i].value.shape) {
        throw Error(ErrorCode::kShapeMismatch, "rebinding " + std::string(name));
      }
      vars_[i] = var;
      return;
    }
  }
  throw Error(ErrorCode::kManifestMismatch, "no parameter " + std::string(name));
}

namespace {

Var Linear(const BoundEncoder& e, Var x, const std::string& prefix) {
  return ops::AddBias(ops::MatMul(x, e[prefix + ".weight"]), e[prefix + ".bias"]);
}

Var Norm(const BoundEncoder& e, Var x, const std::string& prefix) {
  return ops::LayerNorm(x, e[prefix + ".gain"], e[prefix + ".bias"],
                        e.model().config().layer_norm_eps);
}

Var MaybeDropout(Var x, const ForwardOptions& options, double p) {
  if (!options.train || p <= 0.0) return x;
  if (options.rng == nullptr) {
    throw Error(ErrorCode::kInvalidConfig, "training forward pass needs an rng");
  }
  return ops::Dropout(x, p, *options.rng);
}

}  // namespace

EncodedVars Encode(const BoundEncoder& e, const TokenBatch& batch,
                   const ForwardOptions& options) {
  const EncoderConfig& c = e.model().config();
  const size_t b = batch.rows;
  const size_t t = batch.cols;
  const size_t d = c.hidden;
  if (b == 0 || t == 0) {
    throw Error(ErrorCode::kShapeMismatch, "empty token batch");
  }
  if (t > c.maxlen) {
    throw Error(ErrorCode::kOutOfRange, "sequence length " + std::to_string(t) +
                                            " exceeds maxlen " +
                                            std::to_string(c.maxlen));
  }
  if (batch.ids.size() != b * t || batch.mask.size() != b * t) {
    throw Error(ErrorCode::kShapeMismatch, "token batch buffers disagree with shape");
  }
  const double p = c.dropout;

  std::vector<int32_t> positions(b * t);
  for (size_t i = 0; i < b * t; ++i) positions[i] = static_cast<int32_t>(i % t);
  Var x = ops::Add(ops::Embedding(e["embeddings.token"], batch.ids),
                   ops::Embedding(e["embeddings.position"], positions));
  x = MaybeDropout(Norm(e, x, "embeddings.ln"), options, p);

  const double score_scale = 1.0 / std::sqrt(static_cast<double>(d / c.heads));
  for (size_t l = 0; l < c.layers; ++l) {
    const std::string attn = "layer." + std::to_string(l) + ".attn";
    auto heads = [&](const char* proj) {
      return ops::SplitHeads(
          ops::Reshape(Linear(e, x, attn + "." + proj), Shape{b, t, d}), c.heads);
    };
    Var q = heads("query");
    Var k = heads("key");
    Var v = heads("value");
    Var scores = ops::Scale(ops::BatchMatMul(q, k, /*transpose_b=*/true), score_scale);
    Var probs = MaybeDropout(ops::AttentionSoftmax(scores, batch.mask, c.heads),
                             options, p);
    Var context = ops::Reshape(ops::MergeHeads(ops::BatchMatMul(probs, v), c.heads),
                               Shape{b * t, d});
    Var attended = MaybeDropout(Linear(e, context, attn + ".output"), options, p);
    x = Norm(e, ops::Add(x, attended), LayerName(l, "attn_ln"));

    Var inner = ops::Gelu(Linear(e, x, LayerName(l, "ffn.in")));
    Var ffn = MaybeDropout(Linear(e, inner, LayerName(l, "ffn.out")), options, p);
    x = Norm(e, ops::Add(x, ffn), LayerName(l, "ffn_ln"));
  }

  EncodedVars out;
  out.token_states = ops::Reshape(x, Shape{b, t, d});
  std::vector<size_t> cls_rows(b);
  for (size_t i = 0; i < b; ++i) cls_rows[i] = i * t;
  out.cls = ops::GatherRows(x, cls_rows);
  out.pooled = ops::Tanh(Linear(e, out.cls, "pooler"));
  return out;
}

Var MlmLogits(const BoundEncoder& e, Var states) {
  Var h = ops::Gelu(Linear(e, states, "mlm.transform"));
  h = Norm(e, h, "mlm.ln");
  Var logits = e.model().config().tied_mlm
                   ? ops::MatMul(h, e["embeddings.token"], /*transpose_b=*/true)
                   : ops::MatMul(h, e["mlm.decoder.weight"]);
  return ops::AddBias(logits, e["mlm.decoder.bias"]);
}

EncodedBatch EncodeEval(const EncoderModel& model, const TokenBatch& batch) {
  Graph g;
  BoundEncoder bound(g, model, /*trainable=*/false);
  EncodedVars vars = Encode(bound, batch);
  EncodedBatch out;
  out.token_states = vars.token_states.value();
  out.pooled = vars.pooled.value();
  out.cls = vars.cls.value();
  out.attention_mask = batch.mask;
  return out;
}

Tensor MlmLogitsEval(const EncoderModel& model, const Tensor& token_states) {
  Graph g;
  BoundEncoder bound(g, model, /*trainable=*/false);
  return MlmLogits(bound, g.Constant(token_states)).value();
}

Tensor EmbedSentences(const EncoderModel& model,
                      const std::vector<std::string>& texts,
                      Extraction extraction) {
  const size_t d = model.config().hidden;
  Tensor out(Shape{texts.size(), d});
  constexpr size_t kChunk = 64;
  for (size_t start = 0; start < texts.size(); start += kChunk) {
    const size_t end = std::min(texts.size(), start + kChunk);
    std::vector<TokenizedText> rows;
    for (size_t i = start; i < end; ++i) {
      rows.push_back(Tokenize(texts[i], model.vocab(), model.config().maxlen));
    }
    EncodedBatch enc = EncodeEval(model, StackTokenized(rows, /*trim=*/true));
    const Tensor& src = extraction == Extraction::kPooled ? enc.pooled : enc.cls;
    std::copy(src.data.begin(), src.data.end(),
              out.data.begin() + static_cast<std::ptrdiff_t>(start * d));
  }
  return out;
}

}  // namespace mabel
