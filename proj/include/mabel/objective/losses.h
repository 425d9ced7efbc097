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

#ifndef MABEL_OBJECTIVE_LOSSES_H_
#define MABEL_OBJECTIVE_LOSSES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mabel/core/graph.h"

namespace mabel {

enum class AlignVariant { kAl1, kAl2, kAl3 };

std::string_view AlignVariantName(AlignVariant variant);
std::optional<AlignVariant> ParseAlignVariant(std::string_view text);

struct ObjectiveConfig {
  double alpha = 0.05;   // Weight of the alignment term; (1 - alpha) on CL.
  double lambda = 0.1;   // Weight of the MLM term; 0 removes it.
  double tau = 0.05;     // Softmax temperature for cosine logits.
  AlignVariant align = AlignVariant::kAl1;
  // Also drop unchanged duplicate hypotheses of other pairs from the
  // contrastive denominators.
  bool strict_exclusion = false;
  bool use_cl = true;
  bool use_al = true;
  bool use_mlm = true;

  bool HasCl() const { return use_cl; }
  bool HasAl() const { return use_al; }
  bool HasMlm() const { return use_mlm && lambda > 0.0; }
  // Throws NonPositiveTau or InvalidConfig.
  void Validate() const;
};

// Per-step loss values. Terms that are switched off are absent, not zero.
struct LossBreakdown {
  std::optional<double> l_cl;
  std::optional<double> l_al;
  std::optional<double> l_mlm;
  double total = 0.0;
  size_t m = 0;
};

// Pooled embeddings of a batch, each [m, d].
struct PairEmbeddings {
  Var premise;
  Var hypothesis;
  Var premise_aug;
  Var hypothesis_aug;
};

// Mean over pairs of the two anchor terms: the premise against every
// original and augmented hypothesis with its own hypothesis as positive, and
// the augmented premise likewise with its augmented hypothesis as positive.
// Where exclusion[i] is set the duplicate of the positive is removed from
// anchor i's candidates.
Var ContrastiveLoss(const PairEmbeddings& x, std::span<const uint8_t> exclusion,
                    double tau, bool strict_exclusion = false);

// kAl1: mean squared gap between original and augmented pair similarity.
// kAl2: contrastive loss pulling each original sentence towards its
//       augmentation against the other same-role sentences (m >= 2).
// kAl3: mean of -(cos(p, p') - cos(h, h')).
Var AlignmentLoss(const PairEmbeddings& x, AlignVariant variant, double tau);

// Mean cross-entropy of logits[n, v] over the given rows. Throws
// NoMaskedPositions when `positions` is empty.
Var MlmLoss(Var logits, std::span<const int32_t> targets,
            std::span<const size_t> positions);

// Combines the present terms with the configured weights.
LossBreakdown TotalLoss(std::optional<double> l_cl, std::optional<double> l_al,
                        std::optional<double> l_mlm, const ObjectiveConfig& config);

// Differentiable counterpart of TotalLoss. At least one term must be present.
Var CombineLosses(std::optional<Var> l_cl, std::optional<Var> l_al,
                  std::optional<Var> l_mlm, const ObjectiveConfig& config);

}  // namespace mabel

#endif  // MABEL_OBJECTIVE_LOSSES_H_
