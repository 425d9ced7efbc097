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

#include "mabel/core/ops.h"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "mabel/core/error.h"
#include "unit/gradcheck.h"

namespace mabel {
namespace {

using ::mabel::testing::GradCheck;
using ::mabel::testing::RandomTensor;

constexpr double kGradTol = 1e-6;

TEST(OpsTest, IdentityMatmulReturnsOperand) {
  Graph g;
  Var eye = g.Constant(Tensor::Matrix(2, 2, {1, 0, 0, 1}));
  Var x = g.Constant(Tensor::Matrix(2, 3, {1, 2, 3, 4, 5, 6}));
  Var y = ops::MatMul(eye, x);
  EXPECT_EQ(y.value().shape, (Shape{2, 3}));
  EXPECT_EQ(y.value().data, x.value().data);
}

TEST(OpsTest, SoftmaxOfEqualLogitsIsUniform) {
  Graph g;
  Var y = ops::Softmax(g.Constant(Tensor::Vector({3.5, 3.5, 3.5, 3.5})));
  for (double v : y.value().data) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(OpsTest, SoftmaxSurvivesLargeLogits) {
  Graph g;
  Var y = ops::Softmax(g.Constant(Tensor::Vector({1000.0, 1000.0})));
  EXPECT_DOUBLE_EQ(y.value()[0], 0.5);
}

TEST(OpsTest, LayerNormOfTwoValues) {
  Graph g;
  Var y = ops::LayerNorm(g.Constant(Tensor::Vector({1.0, 3.0})),
                         g.Constant(Tensor::Vector({1.0, 1.0})),
                         g.Constant(Tensor::Vector({0.0, 0.0})), 1e-5);
  // (x - 2) / sqrt(1 + 1e-5)
  EXPECT_NEAR(y.value()[0], -1.0, 1e-5);
  EXPECT_NEAR(y.value()[1], 1.0, 1e-5);
  EXPECT_NEAR(y.value()[1], 1.0 / std::sqrt(1.0 + 1e-5), 1e-15);
}

TEST(OpsTest, GradientOfSumIsAllOnes) {
  Graph g;
  Var x = g.Parameter(Tensor(Shape{2, 3}, {1, -2, 3, 4, 5, -6}));
  g.Backward(ops::Sum(x));
  for (double v : g.Grad(x).data) EXPECT_EQ(v, 1.0);
}

TEST(OpsTest, GradientOfSelfDot) {
  Graph g;
  Var x = g.Parameter(Tensor::Vector({1.0, 2.0}));
  g.Backward(ops::Dot(x, x));
  EXPECT_EQ(g.Grad(x).data, (std::vector<double>{2.0, 4.0}));
}

TEST(OpsTest, GradientAccumulatesOverUses) {
  Graph g;
  Var x = g.Parameter(Tensor::Vector({3.0}));
  Var y = ops::Add(ops::Mul(x, x), ops::Scale(x, 5.0));
  g.Backward(ops::Sum(y));
  EXPECT_DOUBLE_EQ(g.Grad(x)[0], 11.0);
}

TEST(OpsTest, CosineExamples) {
  Graph g;
  auto cos = [&](std::vector<double> a, std::vector<double> b) {
    return ops::CosineSimilarity(g.Constant(Tensor::Vector(a)),
                                 g.Constant(Tensor::Vector(b)))
        .value()[0];
  };
  EXPECT_NEAR(cos({0.3, -2.0, 1.1}, {0.3, -2.0, 1.1}), 1.0, 1e-15);
  EXPECT_EQ(cos({1, 0}, {0, 1}), 0.0);
  EXPECT_NEAR(cos({1, 1}, {1, 0}), 0.70710678, 1e-8);
}

TEST(OpsTest, CosineRejectsZeroNorm) {
  Graph g;
  try {
    ops::CosineSimilarity(g.Constant(Tensor::Vector({0, 0})),
                          g.Constant(Tensor::Vector({1, 0})));
    FAIL() << "expected ZeroNorm";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroNorm);
  }
}

TEST(OpsTest, CosineIsScaleInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g;
    Tensor a = RandomTensor({5}, rng);
    Tensor b = RandomTensor({5}, rng);
    Tensor ca = a;
    const double c = scale(rng);
    for (double& v : ca.data) v *= c;
    const double base = ops::CosineSimilarity(g.Constant(a), g.Constant(b)).value()[0];
    const double scaled = ops::CosineSimilarity(g.Constant(ca), g.Constant(b)).value()[0];
    EXPECT_NEAR(base, scaled, 1e-12);
    EXPECT_LE(std::fabs(base), 1.0 + 1e-15);
  }
}

TEST(OpsTest, ShapeMismatchIsReported) {
  Graph g;
  try {
    ops::MatMul(g.Constant(Tensor(Shape{2, 3})), g.Constant(Tensor(Shape{2, 3})));
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(OpsTest, NonFiniteNamesTheNode) {
  Graph g;
  Var x = g.Constant(Tensor::Vector({-1.0}));
  try {
    ops::Log(x);
    FAIL() << "expected NonFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
    EXPECT_NE(std::string(e.what()).find("node 1 (log)"), std::string::npos);
  }
}

TEST(OpsTest, BackwardRequiresScalar) {
  Graph g;
  Var x = g.Parameter(Tensor::Vector({1.0, 2.0}));
  try {
    g.Backward(ops::Scale(x, 2.0));
    FAIL() << "expected NotScalar";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotScalar);
  }
}

TEST(OpsTest, DisconnectedInputGetsZeroGradAndWarning) {
  Graph g;
  Var used = g.Parameter(Tensor::Vector({1.0}));
  Var unused = g.Parameter(Tensor::Vector({1.0, 2.0}));
  g.Backward(ops::Sum(used));
  Tensor grad = g.Grad(unused);
  EXPECT_EQ(grad.data, (std::vector<double>{0.0, 0.0}));
  ASSERT_EQ(g.warnings().size(), 1u);
  EXPECT_NE(g.warnings()[0].find("DisconnectedInput"), std::string::npos);
}

TEST(OpsTest, AttentionSoftmaxIgnoresMaskedKeys) {
  Graph g;
  // One batch row, one head, three steps; third key is padding.
  Var scores = g.Constant(Tensor(Shape{1, 3, 3}, {1, 2, 50, 0, 0, -9, 3, 1, 7}));
  const std::vector<uint8_t> mask = {1, 1, 0};
  Var p = ops::AttentionSoftmax(scores, mask, 1);
  for (size_t q = 0; q < 3; ++q) {
    EXPECT_EQ(p.value()[q * 3 + 2], 0.0);
    EXPECT_NEAR(p.value()[q * 3] + p.value()[q * 3 + 1], 1.0, 1e-15);
  }
}

TEST(OpsTest, ForwardAndBackwardAreBitIdentical) {
  std::mt19937_64 rng(11);
  const Tensor a = RandomTensor({3, 4}, rng);
  const Tensor b = RandomTensor({4, 2}, rng);
  auto run = [&] {
    Graph g;
    Var va = g.Parameter(a), vb = g.Parameter(b);
    Var loss = ops::Sum(ops::Tanh(ops::MatMul(va, vb)));
    g.Backward(loss);
    std::vector<double> out = loss.value().data;
    for (double v : g.Grad(va).data) out.push_back(v);
    return out;
  };
  EXPECT_EQ(run(), run());
}

// Every differentiable op, checked against central differences over 100
// random seeds with small shapes.
struct OpCase {
  const char* name;
  std::vector<Shape> shapes;
  testing::LossBuilder build;
  double lo = -1.0;
  double hi = 1.0;
};

std::vector<OpCase> AllOpCases() {
  using V = const std::vector<Var>&;
  std::vector<OpCase> cases;
  cases.push_back({"add_mul_sub", {{3, 2}, {3, 2}}, [](Graph&, V x) {
                     return ops::Sum(ops::Mul(ops::Add(x[0], x[1]), ops::Sub(x[0], x[1])));
                   }});
  cases.push_back({"exp_log", {{4}}, [](Graph&, V x) {
                     return ops::Sum(ops::Log(ops::Exp(ops::Scale(x[0], 1.5))));
                   }});
  cases.push_back({"log", {{4}}, [](Graph&, V x) { return ops::Sum(ops::Log(x[0])); },
                   0.5, 2.0});
  cases.push_back({"tanh_gelu", {{5}}, [](Graph&, V x) {
                     return ops::Dot(ops::Tanh(x[0]), ops::Gelu(x[0]));
                   }, -2.0, 2.0});
  cases.push_back({"abs_square", {{5}}, [](Graph&, V x) {
                     return ops::Sum(ops::Mul(ops::Abs(x[0]), ops::Square(x[0])));
                   }});
  cases.push_back({"matmul_bias", {{2, 3, 4}, {4, 5}, {5}}, [](Graph&, V x) {
                     return ops::Sum(ops::Tanh(ops::AddBias(ops::MatMul(x[0], x[1]), x[2])));
                   }});
  cases.push_back({"matmul_transposed", {{3, 4}, {5, 4}}, [](Graph&, V x) {
                     return ops::Sum(ops::Square(ops::MatMul(x[0], x[1], true)));
                   }});
  cases.push_back({"batch_matmul", {{2, 3, 4}, {2, 4, 3}, {2, 3, 4}}, [](Graph&, V x) {
                     Var ab = ops::BatchMatMul(x[0], x[1]);
                     Var abc = ops::BatchMatMul(ab, x[2]);
                     Var t = ops::BatchMatMul(abc, x[0], true);
                     return ops::Sum(ops::Tanh(t));
                   }});
  cases.push_back({"heads_softmax", {{2, 3, 4}, {2, 3, 4}}, [](Graph&, V x) {
                     Var q = ops::SplitHeads(x[0], 2);
                     Var k = ops::SplitHeads(x[1], 2);
                     Var s = ops::Softmax(ops::BatchMatMul(q, k, true));
                     Var merged = ops::MergeHeads(ops::BatchMatMul(s, q), 2);
                     return ops::Dot(merged, x[1]);
                   }});
  cases.push_back({"attention_softmax", {{4, 3, 3}, {4, 3, 3}}, [](Graph&, V x) {
                     static const std::vector<uint8_t> mask = {1, 1, 0, 1, 0, 1};
                     Var p = ops::AttentionSoftmax(ops::Scale(x[0], 3.0), mask, 2);
                     return ops::Dot(p, x[1]);
                   }});
  cases.push_back({"layer_norm", {{3, 5}, {5}, {5}, {3, 5}}, [](Graph&, V x) {
                     return ops::Dot(ops::LayerNorm(x[0], x[1], x[2], 1e-5), x[3]);
                   }});
  cases.push_back({"embedding_gather", {{6, 3}, {4, 3}}, [](Graph&, V x) {
                     static const std::vector<int32_t> ids = {1, 4, 1, 0};
                     static const std::vector<size_t> rows = {3, 0, 2};
                     Var e = ops::Embedding(x[0], ids);
                     return ops::Dot(ops::GatherRows(ops::Tanh(e), rows),
                                     ops::GatherRows(x[1], rows));
                   }});
  cases.push_back({"concat_pick_mean", {{2, 3}, {1, 3}, {2, 2}}, [](Graph&, V x) {
                     std::vector<Var> rows = {x[0], x[1]};
                     Var c = ops::ConcatRows(rows);
                     std::vector<Var> cols = {x[0], x[2]};
                     Var d = ops::ConcatCols(cols);
                     static const std::vector<size_t> idx = {0, 4, 8, 4};
                     return ops::Add(ops::Mean(ops::Square(c)),
                                     ops::Sum(ops::Tanh(ops::Pick(d, idx))));
                   }});
  cases.push_back({"row_sum", {{3, 4}}, [](Graph&, V x) {
                     return ops::Sum(ops::Square(ops::RowSum(x[0])));
                   }});
  cases.push_back({"cross_entropy", {{4, 5}}, [](Graph&, V x) {
                     static const std::vector<int32_t> t = {0, 4, 2, 2};
                     return ops::CrossEntropyWithLogits(ops::Scale(x[0], 4.0), t);
                   }});
  cases.push_back({"masked_logsumexp", {{3, 4}}, [](Graph&, V x) {
                     static const std::vector<uint8_t> keep = {1, 1, 0, 1, 0, 1, 1, 1,
                                                               1, 0, 0, 0};
                     return ops::Sum(ops::MaskedLogSumExp(ops::Scale(x[0], 20.0), keep));
                   }});
  cases.push_back({"cosines", {{3, 4}, {3, 4}, {4}, {4}}, [](Graph&, V x) {
                     Var pair = ops::PairwiseCosine(x[0], x[1]);
                     Var row = ops::RowCosine(x[0], x[1]);
                     Var vec = ops::CosineSimilarity(x[2], x[3]);
                     return ops::Add(ops::Add(ops::Sum(ops::Square(pair)), ops::Sum(row)),
                                     vec);
                   }});
  cases.push_back({"dropout", {{4, 4}}, [](Graph&, V x) {
                     std::mt19937_64 rng(5);
                     return ops::Sum(ops::Square(ops::Dropout(x[0], 0.3, rng)));
                   }});
  cases.push_back({"reshape", {{2, 6}}, [](Graph&, V x) {
                     return ops::Sum(ops::Tanh(ops::Reshape(x[0], {3, 4})));
                   }});
  return cases;
}

TEST(OpsTest, EveryOpMatchesFiniteDifferences) {
  for (const OpCase& c : AllOpCases()) {
    for (uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed * 7919 + 17);
      std::vector<Tensor> inputs;
      for (const Shape& s : c.shapes) inputs.push_back(RandomTensor(s, rng, c.lo, c.hi));
      const double err = GradCheck(c.build, inputs);
      ASSERT_LT(err, kGradTol) << c.name << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace mabel
