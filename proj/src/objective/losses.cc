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

#include "mabel/objective/losses.h"

#include <cmath>
#include <vector>

#include "mabel/core/error.h"
#include "mabel/core/ops.h"

namespace mabel {
namespace {

void CheckPairShapes(const PairEmbeddings& x) {
  const Shape& s = x.premise.shape();
  if (s.size() != 2 || s[0] == 0) {
    throw Error(ErrorCode::kShapeMismatch,
                "pair embeddings must be [m, d] with m >= 1, got " + ShapeToString(s));
  }
  for (const Var& v : {x.hypothesis, x.premise_aug, x.hypothesis_aug}) {
    if (v.shape() != s) {
      throw Error(ErrorCode::kShapeMismatch,
                  ShapeToString(v.shape()) + " vs " + ShapeToString(s));
    }
  }
}

void CheckTau(double tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::kNonPositiveTau, "tau must be > 0, got " + std::to_string(tau));
  }
}

// Sum over rows of -log softmax at the positive column, restricted to kept
// candidates.
Var AnchorTerms(Var logits, const std::vector<uint8_t>& keep,
                const std::vector<size_t>& positive) {
  const size_t cols = logits.shape()[1];
  std::vector<size_t> flat(positive.size());
  for (size_t i = 0; i < positive.size(); ++i) flat[i] = i * cols + positive[i];
  return ops::Sum(ops::Sub(ops::MaskedLogSumExp(logits, keep), ops::Pick(logits, flat)));
}

}  // namespace

std::string_view AlignVariantName(AlignVariant variant) {
  switch (variant) {
    case AlignVariant::kAl1: return "AL1";
    case AlignVariant::kAl2: return "AL2";
    case AlignVariant::kAl3: return "AL3";
  }
  return "AL1";
}

std::optional<AlignVariant> ParseAlignVariant(std::string_view text) {
  if (text == "AL1" || text == "al1") return AlignVariant::kAl1;
  if (text == "AL2" || text == "al2") return AlignVariant::kAl2;
  if (text == "AL3" || text == "al3") return AlignVariant::kAl3;
  return std::nullopt;
}

void ObjectiveConfig::Validate() const {
  CheckTau(tau);
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "alpha must lie in [0, 1]");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidConfig, "lambda must be >= 0");
  }
  if (!HasCl() && !HasAl() && !HasMlm()) {
    throw Error(ErrorCode::kInvalidConfig, "every loss term is disabled");
  }
}

Var ContrastiveLoss(const PairEmbeddings& x, std::span<const uint8_t> exclusion,
                    double tau, bool strict_exclusion) {
  CheckTau(tau);
  CheckPairShapes(x);
  const size_t m = x.premise.shape()[0];
  if (exclusion.size() != m) {
    throw Error(ErrorCode::kShapeMismatch, "exclusion flags must have one entry per pair");
  }
  const std::vector<Var> hyps = {x.hypothesis, x.hypothesis_aug};
  const Var candidates = ops::ConcatRows(hyps);  // [2m, d]
  const Var orig_logits = ops::Scale(ops::PairwiseCosine(x.premise, candidates), 1.0 / tau);
  const Var aug_logits =
      ops::Scale(ops::PairwiseCosine(x.premise_aug, candidates), 1.0 / tau);

  // Columns [0, m) are original hypotheses, [m, 2m) augmented ones.
  std::vector<uint8_t> keep_orig(m * 2 * m, 1);
  std::vector<uint8_t> keep_aug(m * 2 * m, 1);
  std::vector<size_t> pos_orig(m), pos_aug(m);
  for (size_t i = 0; i < m; ++i) {
    pos_orig[i] = i;
    pos_aug[i] = m + i;
    for (size_t j = 0; j < m; ++j) {
      if (!exclusion[j] || (j != i && !strict_exclusion)) continue;
      keep_orig[i * 2 * m + m + j] = 0;
      keep_aug[i * 2 * m + j] = 0;
    }
  }
  const Var total = ops::Add(AnchorTerms(orig_logits, keep_orig, pos_orig),
                             AnchorTerms(aug_logits, keep_aug, pos_aug));
  return ops::Scale(total, 1.0 / static_cast<double>(m));
}

Var AlignmentLoss(const PairEmbeddings& x, AlignVariant variant, double tau) {
  CheckPairShapes(x);
  const size_t m = x.premise.shape()[0];
  switch (variant) {
    case AlignVariant::kAl1: {
      const Var gap = ops::Sub(ops::RowCosine(x.premise_aug, x.hypothesis_aug),
                               ops::RowCosine(x.premise, x.hypothesis));
      return ops::Mean(ops::Square(gap));
    }
    case AlignVariant::kAl2: {
      CheckTau(tau);
      if (m < 2) {
        throw Error(ErrorCode::kBatchTooSmall, "AL2 needs at least 2 pairs per batch");
      }
      std::vector<uint8_t> keep(m * 2 * m, 1);
      std::vector<size_t> positive(m);
      for (size_t i = 0; i < m; ++i) {
        keep[i * 2 * m + i] = 0;
        positive[i] = m + i;
      }
      Var total;
      for (const auto& [orig, aug] : {std::pair{x.premise, x.premise_aug},
                                      std::pair{x.hypothesis, x.hypothesis_aug}}) {
        const std::vector<Var> parts = {orig, aug};
        const Var logits =
            ops::Scale(ops::PairwiseCosine(orig, ops::ConcatRows(parts)), 1.0 / tau);
        const Var terms = AnchorTerms(logits, keep, positive);
        total = total.valid() ? ops::Add(total, terms) : terms;
      }
      return ops::Scale(total, 1.0 / static_cast<double>(2 * m));
    }
    case AlignVariant::kAl3: {
      const Var diff = ops::Sub(ops::RowCosine(x.premise, x.premise_aug),
                                ops::RowCosine(x.hypothesis, x.hypothesis_aug));
      return ops::Scale(ops::Mean(diff), -1.0);
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown alignment variant");
}

Var MlmLoss(Var logits, std::span<const int32_t> targets,
            std::span<const size_t> positions) {
  if (positions.empty()) {
    throw Error(ErrorCode::kNoMaskedPositions, "no masked positions in batch");
  }
  if (targets.size() != positions.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one target per masked position expected");
  }
  return ops::CrossEntropyWithLogits(ops::GatherRows(logits, positions), targets);
}

LossBreakdown TotalLoss(std::optional<double> l_cl, std::optional<double> l_al,
                        std::optional<double> l_mlm, const ObjectiveConfig& config) {
  LossBreakdown out;
  out.l_cl = l_cl;
  out.l_al = l_al;
  out.l_mlm = l_mlm;
  double total = 0.0;
  if (l_cl) total += (1.0 - config.alpha) * *l_cl;
  if (l_al) total += config.alpha * *l_al;
  if (l_mlm) total += config.lambda * *l_mlm;
  out.total = total;
  return out;
}

Var CombineLosses(std::optional<Var> l_cl, std::optional<Var> l_al,
                  std::optional<Var> l_mlm, const ObjectiveConfig& config) {
  Var total;
  auto add = [&total](Var term, double weight) {
    const Var scaled = ops::Scale(term, weight);
    total = total.valid() ? ops::Add(total, scaled) : scaled;
  };
  if (l_cl) add(*l_cl, 1.0 - config.alpha);
  if (l_al) add(*l_al, config.alpha);
  if (l_mlm) add(*l_mlm, config.lambda);
  if (!total.valid()) throw Error(ErrorCode::kInvalidConfig, "no loss terms present");
  return total;
}

}  // namespace mabel
