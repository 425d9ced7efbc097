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

#ifndef MABEL_CORE_OPS_H_
#define MABEL_CORE_OPS_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mabel/core/graph.h"

// Differentiable ops over Graph nodes. All ops check shapes eagerly and
// throw ShapeMismatch on incompatible inputs.
namespace mabel::ops {

// Elementwise, identical shapes.
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
Var Scale(Var a, double factor);
Var Exp(Var a);
Var Log(Var a);
Var Tanh(Var a);
Var Gelu(Var a);  // Exact erf form.
Var Abs(Var a);
Var Square(Var a);

// x[..., n] + bias[n].
Var AddBias(Var x, Var bias);

// a[..., k] @ b[k, m] -> [..., m]; with transpose_b, b is [m, k].
Var MatMul(Var a, Var b, bool transpose_b = false);
// a[g, n, k] @ b[g, k, m] -> [g, n, m]; with transpose_b, b is [g, m, k].
Var BatchMatMul(Var a, Var b, bool transpose_b = false);

Var Reshape(Var a, Shape shape);
// [b, t, heads * dh] -> [b * heads, t, dh] and back.
Var SplitHeads(Var x, size_t heads);
Var MergeHeads(Var x, size_t heads);

// Softmax over the last axis, max-subtracted.
Var Softmax(Var x);
// Softmax over the key axis of scores[b * heads, t, t]; keys whose entry in
// key_mask[b * t] is zero receive probability exactly 0.
Var AttentionSoftmax(Var scores, std::span<const uint8_t> key_mask,
                     size_t heads);
// Normalizes over the last axis, then applies gain and bias.
Var LayerNorm(Var x, Var gain, Var bias, double eps);

// Rows of table[v, d] selected by ids -> [ids.size(), d].
Var Embedding(Var table, std::span<const int32_t> ids);

Var Sum(Var a);   // -> scalar
Var Mean(Var a);  // -> scalar
Var RowSum(Var a);  // [n, k] -> [n]
Var Dot(Var a, Var b);  // same shape -> scalar

// Rows of a (viewed as [leading, last]) -> [rows.size(), last].
Var GatherRows(Var a, std::span<const size_t> rows);
Var ConcatRows(std::span<const Var> parts);
// [n, a] ++ [n, b] -> [n, a + b].
Var ConcatCols(std::span<const Var> parts);
// Flat element gather -> [indices.size()].
Var Pick(Var a, std::span<const size_t> indices);

// Mean cross-entropy of logits[n, c] against integer targets.
Var CrossEntropyWithLogits(Var logits, std::span<const int32_t> targets);
// Per-row log-sum-exp of x[n, c] over entries whose keep flag is set -> [n].
Var MaskedLogSumExp(Var x, std::span<const uint8_t> keep);

// Inverted dropout; train mode only. p == 0 returns the input unchanged.
Var Dropout(Var x, double p, std::mt19937_64& rng);

// Rows scaled to unit L2 norm. Throws ZeroNorm when a row norm < 1e-12.
Var NormalizeRows(Var x);
// Cosine similarity of two vectors -> scalar.
Var CosineSimilarity(Var a, Var b);
// All-pairs cosine a[m, d] x b[n, d] -> [m, n].
Var PairwiseCosine(Var a, Var b);
// Row-aligned cosine a[m, d], b[m, d] -> [m].
Var RowCosine(Var a, Var b);

inline constexpr double kMinNorm = 1e-12;

}  // namespace mabel::ops

#endif  // MABEL_CORE_OPS_H_
