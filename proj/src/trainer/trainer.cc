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

#include "mabel/trainer/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "json.hpp"
#include "mabel/core/error.h"
#include "mabel/core/ops.h"
#include "mabel/data/batch.h"
#include "mabel/trainer/checkpoint.h"
#include "mabel/trainer/masking.h"

namespace mabel {
namespace {

constexpr uint64_t kDropoutSalt = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kMaskSalt = 0xc2b2ae3d27d4eb4fULL;
constexpr uint64_t kShuffleSalt = 0x165667b19e3779f9ULL;

struct BatchLoss {
  std::optional<Var> cl;
  std::optional<Var> al;
  std::optional<Var> mlm;
  Var total;
  size_t masked = 0;
  bool mlm_empty = false;
};

std::vector<size_t> Iota(size_t begin, size_t n) {
  std::vector<size_t> out(n);
  std::iota(out.begin(), out.end(), begin);
  return out;
}

// Mean cross-entropy of the MLM head at the corrupted positions of `batch`.
std::optional<Var> MaskedLmTerm(const BoundEncoder& bound, const TokenBatch& batch,
                                double mask_prob, const ForwardOptions& forward,
                                std::mt19937_64& mask_rng, size_t* masked) {
  const MaskedTokens corrupted =
      MaskTokens(batch, bound.model().vocab().size(), mask_prob, mask_rng);
  if (corrupted.empty) return std::nullopt;
  TokenBatch input = batch;
  input.ids = corrupted.ids;
  const EncodedVars enc = Encode(bound, input, forward);
  const size_t d = bound.model().config().hidden;
  const Var flat = ops::Reshape(enc.token_states, {batch.rows * batch.cols, d});
  const Var logits = MlmLogits(bound, ops::GatherRows(flat, corrupted.positions));
  *masked = corrupted.positions.size();
  return MlmLoss(logits, corrupted.targets, Iota(0, corrupted.positions.size()));
}

BatchLoss BuildBatchLoss(const BoundEncoder& bound, const Batch& batch,
                         const TrainConfig& config, bool train,
                         std::mt19937_64& dropout_rng, std::mt19937_64& mask_rng) {
  const ObjectiveConfig& obj = config.objective;
  const ForwardOptions forward{train, &dropout_rng};
  BatchLoss out;
  if (obj.HasCl() || obj.HasAl()) {
    const EncodedVars enc = Encode(bound, batch.views, forward);
    const size_t m = batch.m;
    const PairEmbeddings x{ops::GatherRows(enc.pooled, Iota(0, m)),
                           ops::GatherRows(enc.pooled, Iota(m, m)),
                           ops::GatherRows(enc.pooled, Iota(2 * m, m)),
                           ops::GatherRows(enc.pooled, Iota(3 * m, m))};
    if (obj.HasCl()) {
      out.cl = ContrastiveLoss(x, batch.exclusion, obj.tau, obj.strict_exclusion);
    }
    if (obj.HasAl()) out.al = AlignmentLoss(x, obj.align, obj.tau);
  }
  if (obj.HasMlm()) {
    out.mlm = MaskedLmTerm(bound, batch.views, config.mask_prob, forward, mask_rng,
                           &out.masked);
    out.mlm_empty = !out.mlm.has_value();
  }
  if (out.cl || out.al || out.mlm) out.total = CombineLosses(out.cl, out.al, out.mlm, obj);
  return out;
}

std::optional<double> ValueOf(const std::optional<Var>& v) {
  if (!v) return std::nullopt;
  return v->value()[0];
}

// Running mean of optional terms across micro-batches.
struct TermAverage {
  double sum = 0.0;
  size_t count = 0;
  void Add(std::optional<double> v) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  std::optional<double> Mean() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
};

[[noreturn]] void Diverged(size_t step, const std::string& why) {
  throw Error(ErrorCode::kDivergedLoss, "step " + std::to_string(step) + ": " + why);
}

}  // namespace

void TrainConfig::Validate() const {
  objective.Validate();
  if (batch_size < 2) {
    throw Error(ErrorCode::kBatchTooSmall, "batch_size must be >= 2");
  }
  if (grad_accum == 0) throw Error(ErrorCode::kInvalidConfig, "grad_accum must be >= 1");
  if (!(mask_prob > 0.0 && mask_prob < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "mask_prob must lie in (0, 1)");
  }
  if (maxlen < 3) throw Error(ErrorCode::kInvalidConfig, "maxlen must be >= 3");
  if (!(adam.lr >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "lr must be >= 0");
}

TrainResult Train(EncoderModel model, const Corpus& corpus, const TrainConfig& config,
                  const Corpus* eval_corpus,
                  const std::function<void(const StepRecord&)>& on_step) {
  config.Validate();
  if (config.maxlen > model.config().maxlen) {
    throw Error(ErrorCode::kInvalidConfig,
                "maxlen " + std::to_string(config.maxlen) + " exceeds encoder maxlen " +
                    std::to_string(model.config().maxlen));
  }
  if (corpus.quads.empty()) throw Error(ErrorCode::kEmptyCorpus, "training corpus is empty");
  const auto started = std::chrono::steady_clock::now();

  TrainResult result{model, {}, {}};
  TrainTrace& trace = result.trace;
  trace.seed = config.seed;
  std::mt19937_64 dropout_rng(config.seed ^ kDropoutSalt);
  std::mt19937_64 mask_rng(config.seed ^ kMaskSalt);
  Adam adam(config.adam, model.parameters());
  const bool evaluate = eval_corpus != nullptr && config.eval_every > 0;
  if (evaluate) trace.initial_alignment = MeanAlignmentGap(model, *eval_corpus);
  if (!config.checkpoint_dir.empty()) {
    std::filesystem::create_directories(config.checkpoint_dir);
  }

  size_t step = 0;
  for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<Batch> batches =
        MakeBatches(corpus, model.vocab(), config.maxlen, config.batch_size,
                    config.seed ^ (kShuffleSalt * (epoch + 1)), config.shuffle,
                    &trace.warnings);
    for (size_t start = 0; start < batches.size(); start += config.grad_accum) {
      const size_t end = std::min(batches.size(), start + config.grad_accum);
      const double micro = static_cast<double>(end - start);
      ++step;
      std::vector<Tensor> grads;
      for (const NamedTensor& p : model.parameters()) grads.emplace_back(p.value.shape);
      TermAverage cl, al, mlm;
      StepRecord record;
      record.step = step;
      record.epoch = epoch;
      record.lr = adam.NextLr();
      for (size_t b = start; b < end; ++b) {
        Graph graph;
        BoundEncoder bound(graph, model, /*trainable=*/true);
        try {
          BatchLoss loss =
              BuildBatchLoss(bound, batches[b], config, true, dropout_rng, mask_rng);
          if (loss.mlm_empty) {
            trace.warnings.push_back("step " + std::to_string(step) +
                                     ": no maskable tokens, MLM term skipped");
          }
          if (!loss.total.valid()) continue;
          if (!std::isfinite(loss.total.value()[0])) Diverged(step, "non-finite loss");
          graph.Backward(loss.total);
          for (size_t k = 0; k < grads.size(); ++k) {
            const Tensor g = graph.Grad(bound.vars()[k]);
            for (size_t i = 0; i < g.size(); ++i) grads[k][i] += g[i] / micro;
          }
          cl.Add(ValueOf(loss.cl));
          al.Add(ValueOf(loss.al));
          mlm.Add(ValueOf(loss.mlm));
          record.masked_tokens += loss.masked;
          record.loss.m += batches[b].m;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kNonFinite) Diverged(step, e.what());
          throw;
        }
      }
      for (const Tensor& g : grads) {
        if (!g.AllFinite()) Diverged(step, "non-finite gradient");
      }
      adam.Step(model.mutable_parameters(), grads);
      const size_t m = record.loss.m;
      record.loss = TotalLoss(cl.Mean(), al.Mean(), mlm.Mean(), config.objective);
      record.loss.m = m;
      if (!std::isfinite(record.loss.total)) Diverged(step, "non-finite loss");
      if (evaluate && step % config.eval_every == 0) {
        record.held_out_alignment = MeanAlignmentGap(model, *eval_corpus);
      }
      if (!config.checkpoint_dir.empty() && config.checkpoint_every > 0 &&
          step % config.checkpoint_every == 0) {
        const std::string path =
            (std::filesystem::path(config.checkpoint_dir) /
             ("step-" + std::to_string(step) + ".ckpt"))
                .string();
        SaveCheckpoint(model, config.run_config_json, path);
        result.checkpoints.push_back(path);
      }
      trace.steps.push_back(record);
      if (on_step) on_step(record);
    }
  }
  if (!config.checkpoint_dir.empty()) {
    const std::string path =
        (std::filesystem::path(config.checkpoint_dir) / "model.ckpt").string();
    SaveCheckpoint(model, config.run_config_json, path);
    result.checkpoints.push_back(path);
  }
  result.model = std::move(model);
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

LossBreakdown EvaluateBatchLoss(const EncoderModel& model, const Corpus& corpus,
                                const std::vector<size_t>& indices,
                                const TrainConfig& config) {
  const Batch batch = AssembleBatch(corpus, indices, model.vocab(), config.maxlen);
  Graph graph;
  BoundEncoder bound(graph, model, /*trainable=*/false);
  std::mt19937_64 dropout_rng(config.seed ^ kDropoutSalt);
  std::mt19937_64 mask_rng(config.seed ^ kMaskSalt);
  const BatchLoss loss =
      BuildBatchLoss(bound, batch, config, false, dropout_rng, mask_rng);
  LossBreakdown out =
      TotalLoss(ValueOf(loss.cl), ValueOf(loss.al), ValueOf(loss.mlm), config.objective);
  out.m = batch.m;
  return out;
}

double MeanAlignmentGap(const EncoderModel& model, const Corpus& corpus) {
  if (corpus.quads.empty()) throw Error(ErrorCode::kEmptyCorpus, "no quads to evaluate");
  std::vector<std::string> p, h, pa, ha;
  for (const AugmentedQuad& q : corpus.quads) {
    p.push_back(q.premise);
    h.push_back(q.hypothesis);
    pa.push_back(q.premise_aug);
    ha.push_back(q.hypothesis_aug);
  }
  Graph graph;
  const Var vp = graph.Constant(EmbedSentences(model, p));
  const Var vh = graph.Constant(EmbedSentences(model, h));
  const Var vpa = graph.Constant(EmbedSentences(model, pa));
  const Var vha = graph.Constant(EmbedSentences(model, ha));
  return AlignmentLoss({vp, vh, vpa, vha}, AlignVariant::kAl1, 1.0).value()[0];
}

std::string StepRecordJson(const StepRecord& record) {
  nlohmann::ordered_json j;
  j["step"] = record.step;
  j["epoch"] = record.epoch;
  j["m"] = record.loss.m;
  j["lr"] = record.lr;
  if (record.loss.l_cl) j["l_cl"] = *record.loss.l_cl;
  if (record.loss.l_al) j["l_al"] = *record.loss.l_al;
  if (record.loss.l_mlm) j["l_mlm"] = *record.loss.l_mlm;
  j["total"] = record.loss.total;
  j["masked_tokens"] = record.masked_tokens;
  if (record.held_out_alignment) j["held_out_alignment"] = *record.held_out_alignment;
  return j.dump();
}

EncoderModel TrainMlm(EncoderModel model, const std::vector<std::string>& sentences,
                      const MlmTrainConfig& config) {
  if (sentences.empty()) throw Error(ErrorCode::kEmptyCorpus, "no sentences for MLM");
  std::vector<TokenizedText> tokenized;
  for (const std::string& s : sentences) {
    tokenized.push_back(Tokenize(s, model.vocab(), model.config().maxlen));
  }
  std::mt19937_64 order_rng(config.seed ^ kShuffleSalt);
  std::mt19937_64 dropout_rng(config.seed ^ kDropoutSalt);
  std::mt19937_64 mask_rng(config.seed ^ kMaskSalt);
  std::vector<size_t> order = Iota(0, tokenized.size());
  size_t cursor = order.size();
  Adam adam(config.adam, model.parameters());
  for (size_t step = 1; step <= config.steps; ++step) {
    std::vector<TokenizedText> rows;
    while (rows.size() < std::min(config.batch_size, tokenized.size())) {
      if (cursor == order.size()) {
        std::shuffle(order.begin(), order.end(), order_rng);
        cursor = 0;
      }
      rows.push_back(tokenized[order[cursor++]]);
    }
    const TokenBatch batch = StackTokenized(rows, /*trim=*/true);
    Graph graph;
    BoundEncoder bound(graph, model, /*trainable=*/true);
    size_t masked = 0;
    std::optional<Var> loss;
    try {
      loss = MaskedLmTerm(bound, batch, config.mask_prob, {true, &dropout_rng},
                          mask_rng, &masked);
      if (!loss) continue;
      graph.Backward(*loss);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNonFinite) Diverged(step, e.what());
      throw;
    }
    std::vector<Tensor> grads;
    for (const Var& v : bound.vars()) grads.push_back(graph.Grad(v));
    adam.Step(model.mutable_parameters(), grads);
  }
  return model;
}

}  // namespace mabel
