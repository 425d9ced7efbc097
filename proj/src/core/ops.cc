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

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "cblas.h"
#include "mabel/core/error.h"

namespace mabel::ops {
namespace {

Graph& GraphOf(Var v) { return *v.graph(); }

[[noreturn]] void Mismatch(std::string_view op, const std::string& detail) {
  throw Error(ErrorCode::kShapeMismatch, std::string(op) + ": " + detail);
}

void RequireSameShape(std::string_view op, Var a, Var b) {
  if (a.shape() != b.shape()) {
    Mismatch(op, ShapeToString(a.shape()) + " vs " + ShapeToString(b.shape()));
  }
}

void RequireRank(std::string_view op, Var a, size_t rank) {
  if (a.shape().size() != rank) {
    Mismatch(op, "expected rank " + std::to_string(rank) + ", got " +
                     ShapeToString(a.shape()));
  }
}

// Elementwise unary op whose derivative is a function of (x, y).
template <typename Fwd, typename Deriv>
Var Unary(std::string_view op, Var a, Fwd fwd, Deriv deriv) {
  const Tensor& x = a.value();
  Tensor y(x.shape);
  for (size_t i = 0; i < x.size(); ++i) y[i] = fwd(x[i]);
  return GraphOf(a).Record(
      op, {a}, std::move(y), [deriv](Graph& g, const Node& self) {
        Tensor* sink = g.GradSink(self.inputs[0]);
        if (sink == nullptr) return;
        const Tensor& x = g.node(self.inputs[0]).value;
        for (size_t i = 0; i < x.size(); ++i) {
          (*sink)[i] += self.grad[i] * deriv(x[i], self.value[i]);
        }
      });
}

// Single-threaded so results do not depend on the host's core count.
void PinBlasThreads() {
  static std::once_flag once;
  std::call_once(once, [] { openblas_set_num_threads(1); });
}

// c[n, m] += a[n, k] @ b[k, m]
void GemmNN(const double* a, const double* b, double* c, size_t n, size_t k,
            size_t m) {
  if (n == 0 || m == 0 || k == 0) return;
  PinBlasThreads();
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(n),
              static_cast<int>(m), static_cast<int>(k), 1.0, a, static_cast<int>(k), b,
              static_cast<int>(m), 1.0, c, static_cast<int>(m));
}

// c[n, m] += a[n, k] @ b[m, k]^T
void GemmNT(const double* a, const double* b, double* c, size_t n, size_t k,
            size_t m) {
  if (n == 0 || m == 0 || k == 0) return;
  PinBlasThreads();
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(n),
              static_cast<int>(m), static_cast<int>(k), 1.0, a, static_cast<int>(k), b,
              static_cast<int>(k), 1.0, c, static_cast<int>(m));
}

// c[k, m] += a[n, k]^T @ b[n, m]
void GemmTN(const double* a, const double* b, double* c, size_t n, size_t k,
            size_t m) {
  if (n == 0 || m == 0 || k == 0) return;
  PinBlasThreads();
  cblas_dgemm(CblasRowMajor, CblasTrans, CblasNoTrans, static_cast<int>(k),
              static_cast<int>(m), static_cast<int>(n), 1.0, a, static_cast<int>(k), b,
              static_cast<int>(m), 1.0, c, static_cast<int>(m));
}

}  // namespace

Var Add(Var a, Var b) {
  RequireSameShape("add", a, b);
  Tensor y = a.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] += b.value()[i];
  return GraphOf(a).Record("add", {a, b}, std::move(y),
                           [](Graph& g, const Node& self) {
                             for (size_t in : self.inputs) {
                               if (Tensor* s = g.GradSink(in)) {
                                 for (size_t i = 0; i < s->size(); ++i)
                                   (*s)[i] += self.grad[i];
                               }
                             }
                           });
}

Var Sub(Var a, Var b) {
  RequireSameShape("sub", a, b);
  Tensor y = a.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] -= b.value()[i];
  return GraphOf(a).Record("sub", {a, b}, std::move(y),
                           [](Graph& g, const Node& self) {
                             if (Tensor* s = g.GradSink(self.inputs[0])) {
                               for (size_t i = 0; i < s->size(); ++i)
                                 (*s)[i] += self.grad[i];
                             }
                             if (Tensor* s = g.GradSink(self.inputs[1])) {
                               for (size_t i = 0; i < s->size(); ++i)
                                 (*s)[i] -= self.grad[i];
                             }
                           });
}

Var Mul(Var a, Var b) {
  RequireSameShape("mul", a, b);
  Tensor y = a.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] *= b.value()[i];
  return GraphOf(a).Record(
      "mul", {a, b}, std::move(y), [](Graph& g, const Node& self) {
        const Tensor& av = g.node(self.inputs[0]).value;
        const Tensor& bv = g.node(self.inputs[1]).value;
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t i = 0; i < s->size(); ++i) (*s)[i] += self.grad[i] * bv[i];
        }
        if (Tensor* s = g.GradSink(self.inputs[1])) {
          for (size_t i = 0; i < s->size(); ++i) (*s)[i] += self.grad[i] * av[i];
        }
      });
}

Var Scale(Var a, double factor) {
  return Unary(
      "scale", a, [factor](double x) { return factor * x; },
      [factor](double, double) { return factor; });
}

Var Exp(Var a) {
  return Unary(
      "exp", a, [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Var Log(Var a) {
  return Unary(
      "log", a, [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Var Tanh(Var a) {
  return Unary(
      "tanh", a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Gelu(Var a) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return Unary(
      "gelu", a,
      [](double x) { return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2)); },
      [](double x, double) {
        const double cdf = 0.5 * (1.0 + std::erf(x * kInvSqrt2));
        return cdf + x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
      });
}

Var Abs(Var a) {
  return Unary(
      "abs", a, [](double x) { return std::fabs(x); },
      [](double x, double) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); });
}

Var Square(Var a) {
  return Unary(
      "square", a, [](double x) { return x * x; },
      [](double x, double) { return 2.0 * x; });
}

Var AddBias(Var x, Var bias) {
  RequireRank("add_bias", bias, 1);
  const size_t n = x.value().last_dim();
  if (x.shape().empty() || bias.shape()[0] != n) {
    Mismatch("add_bias", ShapeToString(x.shape()) + " + " +
                             ShapeToString(bias.shape()));
  }
  Tensor y = x.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] += bias.value()[i % n];
  return GraphOf(x).Record(
      "add_bias", {x, bias}, std::move(y), [n](Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t i = 0; i < s->size(); ++i) (*s)[i] += self.grad[i];
        }
        if (Tensor* s = g.GradSink(self.inputs[1])) {
          for (size_t i = 0; i < self.grad.size(); ++i)
            (*s)[i % n] += self.grad[i];
        }
      });
}

Var MatMul(Var a, Var b, bool transpose_b) {
  RequireRank("matmul", b, 2);
  if (a.shape().empty()) Mismatch("matmul", "scalar left operand");
  const size_t k = a.value().last_dim();
  const size_t n = a.value().leading_size();
  const size_t bk = transpose_b ? b.shape()[1] : b.shape()[0];
  const size_t m = transpose_b ? b.shape()[0] : b.shape()[1];
  if (bk != k) {
    Mismatch("matmul", ShapeToString(a.shape()) + " @ " +
                           ShapeToString(b.shape()) +
                           (transpose_b ? "^T" : ""));
  }
  Shape out_shape = a.shape();
  out_shape.back() = m;
  Tensor y(out_shape);
  if (transpose_b) {
    GemmNT(a.value().data.data(), b.value().data.data(), y.data.data(), n, k, m);
  } else {
    GemmNN(a.value().data.data(), b.value().data.data(), y.data.data(), n, k, m);
  }
  return GraphOf(a).Record(
      "matmul", {a, b}, std::move(y),
      [n, k, m, transpose_b](Graph& g, const Node& self) {
        const Tensor& av = g.node(self.inputs[0]).value;
        const Tensor& bv = g.node(self.inputs[1]).value;
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          // dA = dY @ B^T  (or dY @ B when B was transposed)
          if (transpose_b) {
            GemmNN(self.grad.data.data(), bv.data.data(), s->data.data(), n, m, k);
          } else {
            GemmNT(self.grad.data.data(), bv.data.data(), s->data.data(), n, m, k);
          }
        }
        if (Tensor* s = g.GradSink(self.inputs[1])) {
          if (transpose_b) {
            // dB[m, k] = dY^T @ A
            GemmTN(self.grad.data.data(), av.data.data(), s->data.data(), n, m, k);
          } else {
            // dB[k, m] = A^T @ dY
            GemmTN(av.data.data(), self.grad.data.data(), s->data.data(), n, k, m);
          }
        }
      });
}

Var BatchMatMul(Var a, Var b, bool transpose_b) {
  RequireRank("batch_matmul", a, 3);
  RequireRank("batch_matmul", b, 3);
  const size_t groups = a.shape()[0];
  const size_t n = a.shape()[1];
  const size_t k = a.shape()[2];
  const size_t bk = transpose_b ? b.shape()[2] : b.shape()[1];
  const size_t m = transpose_b ? b.shape()[1] : b.shape()[2];
  if (b.shape()[0] != groups || bk != k) {
    Mismatch("batch_matmul",
             ShapeToString(a.shape()) + " @ " + ShapeToString(b.shape()));
  }
  Tensor y(Shape{groups, n, m});
  const double* ap = a.value().data.data();
  const double* bp = b.value().data.data();
  for (size_t gi = 0; gi < groups; ++gi) {
    if (transpose_b) {
      GemmNT(ap + gi * n * k, bp + gi * m * k, y.data.data() + gi * n * m, n, k, m);
    } else {
      GemmNN(ap + gi * n * k, bp + gi * k * m, y.data.data() + gi * n * m, n, k, m);
    }
  }
  return GraphOf(a).Record(
      "batch_matmul", {a, b}, std::move(y),
      [groups, n, k, m, transpose_b](Graph& g, const Node& self) {
        const double* av = g.node(self.inputs[0]).value.data.data();
        const double* bv = g.node(self.inputs[1]).value.data.data();
        const double* dy = self.grad.data.data();
        Tensor* sa = g.GradSink(self.inputs[0]);
        Tensor* sb = g.GradSink(self.inputs[1]);
        for (size_t gi = 0; gi < groups; ++gi) {
          const double* dyg = dy + gi * n * m;
          if (sa != nullptr) {
            double* dst = sa->data.data() + gi * n * k;
            if (transpose_b) {
              GemmNN(dyg, bv + gi * m * k, dst, n, m, k);
            } else {
              GemmNT(dyg, bv + gi * k * m, dst, n, m, k);
            }
          }
          if (sb != nullptr) {
            if (transpose_b) {
              GemmTN(dyg, av + gi * n * k, sb->data.data() + gi * m * k, n, m, k);
            } else {
              GemmTN(av + gi * n * k, dyg, sb->data.data() + gi * k * m, n, k, m);
            }
          }
        }
      });
}

Var Reshape(Var a, Shape shape) {
  if (ShapeSize(shape) != a.value().size()) {
    Mismatch("reshape", ShapeToString(a.shape()) + " -> " + ShapeToString(shape));
  }
  Tensor y(std::move(shape), a.value().data);
  return GraphOf(a).Record("reshape", {a}, std::move(y),
                           [](Graph& g, const Node& self) {
                             if (Tensor* s = g.GradSink(self.inputs[0])) {
                               for (size_t i = 0; i < s->size(); ++i)
                                 (*s)[i] += self.grad[i];
                             }
                           });
}

namespace {

// Index map between [b, t, h, dh] and [b, h, t, dh] layouts.
struct HeadLayout {
  size_t batch, steps, heads, head_dim;
  size_t Merged(size_t b, size_t t, size_t h, size_t e) const {
    return ((b * steps + t) * heads + h) * head_dim + e;
  }
  size_t Split(size_t b, size_t t, size_t h, size_t e) const {
    return ((b * heads + h) * steps + t) * head_dim + e;
  }
};

template <bool kToSplit>
void PermuteHeads(const HeadLayout& l, const double* src, double* dst,
                  bool accumulate) {
  for (size_t b = 0; b < l.batch; ++b)
    for (size_t t = 0; t < l.steps; ++t)
      for (size_t h = 0; h < l.heads; ++h)
        for (size_t e = 0; e < l.head_dim; ++e) {
          const size_t from = kToSplit ? l.Merged(b, t, h, e) : l.Split(b, t, h, e);
          const size_t to = kToSplit ? l.Split(b, t, h, e) : l.Merged(b, t, h, e);
          if (accumulate) {
            dst[to] += src[from];
          } else {
            dst[to] = src[from];
          }
        }
}

}  // namespace

Var SplitHeads(Var x, size_t heads) {
  RequireRank("split_heads", x, 3);
  const Shape& s = x.shape();
  if (heads == 0 || s[2] % heads != 0) {
    Mismatch("split_heads", ShapeToString(s) + " not divisible into " +
                                std::to_string(heads) + " heads");
  }
  const HeadLayout l{s[0], s[1], heads, s[2] / heads};
  Tensor y(Shape{l.batch * heads, l.steps, l.head_dim});
  PermuteHeads<true>(l, x.value().data.data(), y.data.data(), false);
  return GraphOf(x).Record("split_heads", {x}, std::move(y),
                           [l](Graph& g, const Node& self) {
                             if (Tensor* sink = g.GradSink(self.inputs[0])) {
                               PermuteHeads<false>(l, self.grad.data.data(),
                                                   sink->data.data(), true);
                             }
                           });
}

Var MergeHeads(Var x, size_t heads) {
  RequireRank("merge_heads", x, 3);
  const Shape& s = x.shape();
  if (heads == 0 || s[0] % heads != 0) {
    Mismatch("merge_heads", ShapeToString(s));
  }
  const HeadLayout l{s[0] / heads, s[1], heads, s[2]};
  Tensor y(Shape{l.batch, l.steps, heads * l.head_dim});
  PermuteHeads<false>(l, x.value().data.data(), y.data.data(), false);
  return GraphOf(x).Record("merge_heads", {x}, std::move(y),
                           [l](Graph& g, const Node& self) {
                             if (Tensor* sink = g.GradSink(self.inputs[0])) {
                               PermuteHeads<true>(l, self.grad.data.data(),
                                                  sink->data.data(), true);
                             }
                           });
}

namespace {

// dx = y * (dy - sum(dy * y)) per row.
void SoftmaxBackwardRows(const Tensor& y, const Tensor& dy, Tensor& dx,
                         size_t cols) {
  const size_t rows = y.size() / cols;
  for (size_t r = 0; r < rows; ++r) {
    const double* yr = y.data.data() + r * cols;
    const double* dyr = dy.data.data() + r * cols;
    double* dxr = dx.data.data() + r * cols;
    double dot = 0.0;
    for (size_t j = 0; j < cols; ++j) dot += yr[j] * dyr[j];
    for (size_t j = 0; j < cols; ++j) dxr[j] += yr[j] * (dyr[j] - dot);
  }
}

}  // namespace

Var Softmax(Var x) {
  if (x.shape().empty()) Mismatch("softmax", "scalar input");
  const size_t cols = x.value().last_dim();
  const size_t rows = x.value().leading_size();
  Tensor y(x.shape());
  for (size_t r = 0; r < rows; ++r) {
    const double* xr = x.value().data.data() + r * cols;
    double* yr = y.data.data() + r * cols;
    const double mx = *std::max_element(xr, xr + cols);
    double total = 0.0;
    for (size_t j = 0; j < cols; ++j) total += (yr[j] = std::exp(xr[j] - mx));
    for (size_t j = 0; j < cols; ++j) yr[j] /= total;
  }
  return GraphOf(x).Record("softmax", {x}, std::move(y),
                           [cols](Graph& g, const Node& self) {
                             if (Tensor* s = g.GradSink(self.inputs[0])) {
                               SoftmaxBackwardRows(self.value, self.grad, *s, cols);
                             }
                           });
}

Var AttentionSoftmax(Var scores, std::span<const uint8_t> key_mask,
                     size_t heads) {
  RequireRank("attention_softmax", scores, 3);
  const Shape& s = scores.shape();
  const size_t steps = s[2];
  if (s[1] != steps || heads == 0 || s[0] % heads != 0 ||
      key_mask.size() != (s[0] / heads) * steps) {
    Mismatch("attention_softmax", ShapeToString(s) + " with mask of " +
                                      std::to_string(key_mask.size()));
  }
  std::vector<uint8_t> mask(key_mask.begin(), key_mask.end());
  Tensor y(s);
  for (size_t gi = 0; gi < s[0]; ++gi) {
    const uint8_t* keys = mask.data() + (gi / heads) * steps;
    for (size_t q = 0; q < steps; ++q) {
      const double* xr = scores.value().data.data() + (gi * steps + q) * steps;
      double* yr = y.data.data() + (gi * steps + q) * steps;
      double mx = -std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < steps; ++j)
        if (keys[j]) mx = std::max(mx, xr[j]);
      if (!std::isfinite(mx)) continue;  // No visible keys: all-zero row.
      double total = 0.0;
      for (size_t j = 0; j < steps; ++j) {
        yr[j] = keys[j] ? std::exp(xr[j] - mx) : 0.0;
        total += yr[j];
      }
      for (size_t j = 0; j < steps; ++j) yr[j] /= total;
    }
  }
  return GraphOf(scores).Record(
      "attention_softmax", {scores}, std::move(y),
      [steps](Graph& g, const Node& self) {
        if (Tensor* sink = g.GradSink(self.inputs[0])) {
          SoftmaxBackwardRows(self.value, self.grad, *sink, steps);
        }
      });
}

Var LayerNorm(Var x, Var gain, Var bias, double eps) {
  RequireRank("layer_norm", gain, 1);
  RequireRank("layer_norm", bias, 1);
  const size_t cols = x.value().last_dim();
  if (gain.shape()[0] != cols || bias.shape()[0] != cols) {
    Mismatch("layer_norm", ShapeToString(x.shape()) + " with gain " +
                               ShapeToString(gain.shape()));
  }
  const size_t rows = x.value().leading_size();
  Tensor y(x.shape());
  std::vector<double> xhat(x.value().size());
  std::vector<double> rstd(rows);
  for (size_t r = 0; r < rows; ++r) {
    const double* xr = x.value().data.data() + r * cols;
    double mean = 0.0;
    for (size_t j = 0; j < cols; ++j) mean += xr[j];
    mean /= static_cast<double>(cols);
    double var = 0.0;
    for (size_t j = 0; j < cols; ++j) var += (xr[j] - mean) * (xr[j] - mean);
    var /= static_cast<double>(cols);
    rstd[r] = 1.0 / std::sqrt(var + eps);
    for (size_t j = 0; j < cols; ++j) {
      const double h = (xr[j] - mean) * rstd[r];
      xhat[r * cols + j] = h;
      y[r * cols + j] = h * gain.value()[j] + bias.value()[j];
    }
  }
  return GraphOf(x).Record(
      "layer_norm", {x, gain, bias}, std::move(y),
      [rows, cols, xhat = std::move(xhat), rstd = std::move(rstd)](
          Graph& g, const Node& self) {
        const Tensor& gv = g.node(self.inputs[1]).value;
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t r = 0; r < rows; ++r) {
            const double* dy = self.grad.data.data() + r * cols;
            const double* h = xhat.data() + r * cols;
            double mean_d = 0.0, mean_dh = 0.0;
            for (size_t j = 0; j < cols; ++j) {
              const double d = dy[j] * gv[j];
              mean_d += d;
              mean_dh += d * h[j];
            }
            mean_d /= static_cast<double>(cols);
            mean_dh /= static_cast<double>(cols);
            for (size_t j = 0; j < cols; ++j) {
              (*s)[r * cols + j] +=
                  rstd[r] * (dy[j] * gv[j] - mean_d - h[j] * mean_dh);
            }
          }
        }
        if (Tensor* s = g.GradSink(self.inputs[1])) {
          for (size_t i = 0; i < self.grad.size(); ++i)
            (*s)[i % cols] += self.grad[i] * xhat[i];
        }
        if (Tensor* s = g.GradSink(self.inputs[2])) {
          for (size_t i = 0; i < self.grad.size(); ++i)
            (*s)[i % cols] += self.grad[i];
        }
      });
}

Var Embedding(Var table, std::span<const int32_t> ids) {
  RequireRank("embedding", table, 2);
  const size_t vocab = table.shape()[0];
  const size_t dim = table.shape()[1];
  std::vector<int32_t> rows(ids.begin(), ids.end());
  Tensor y(Shape{rows.size(), dim});
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || static_cast<size_t>(rows[i]) >= vocab) {
      throw Error(ErrorCode::kIdOutOfRange,
                  "id " + std::to_string(rows[i]) + " with vocabulary " +
                      std::to_string(vocab));
    }
    std::copy_n(table.value().data.data() + rows[i] * dim, dim,
                y.data.data() + i * dim);
  }
  return GraphOf(table).Record(
      "embedding", {table}, std::move(y),
      [rows = std::move(rows), dim](Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t i = 0; i < rows.size(); ++i) {
            double* dst = s->data.data() + rows[i] * dim;
            const double* src = self.grad.data.data() + i * dim;
            for (size_t j = 0; j < dim; ++j) dst[j] += src[j];
          }
        }
      });
}

Var Sum(Var a) {
  double total = 0.0;
  for (double v : a.value().data) total += v;
  return GraphOf(a).Record("sum", {a}, Tensor::Scalar(total),
                           [](Graph& g, const Node& self) {
                             if (Tensor* s = g.GradSink(self.inputs[0])) {
                               for (double& v : s->data) v += self.grad[0];
                             }
                           });
}

Var Mean(Var a) {
  const size_t n = a.value().size();
  if (n == 0) Mismatch("mean", "empty tensor");
  return Scale(Sum(a), 1.0 / static_cast<double>(n));
}

Var RowSum(Var a) {
  RequireRank("row_sum", a, 2);
  const size_t rows = a.shape()[0];
  const size_t cols = a.shape()[1];
  Tensor y(Shape{rows});
  for (size_t r = 0; r < rows; ++r)
    for (size_t j = 0; j < cols; ++j) y[r] += a.value()[r * cols + j];
  return GraphOf(a).Record("row_sum", {a}, std::move(y),
                           [cols](Graph& g, const Node& self) {
                             if (Tensor* s = g.GradSink(self.inputs[0])) {
                               for (size_t i = 0; i < s->size(); ++i)
                                 (*s)[i] += self.grad[i / cols];
                             }
                           });
}

Var Dot(Var a, Var b) { return Sum(Mul(a, b)); }

Var GatherRows(Var a, std::span<const size_t> rows) {
  if (a.shape().empty()) Mismatch("gather_rows", "scalar input");
  const size_t cols = a.value().last_dim();
  const size_t available = a.value().leading_size();
  std::vector<size_t> picked(rows.begin(), rows.end());
  Tensor y(Shape{picked.size(), cols});
  for (size_t i = 0; i < picked.size(); ++i) {
    if (picked[i] >= available) {
      Mismatch("gather_rows", "row " + std::to_string(picked[i]) + " of " +
                                  std::to_string(available));
    }
    std::copy_n(a.value().data.data() + picked[i] * cols, cols,
                y.data.data() + i * cols);
  }
  return GraphOf(a).Record(
      "gather_rows", {a}, std::move(y),
      [picked = std::move(picked), cols](Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t i = 0; i < picked.size(); ++i)
            for (size_t j = 0; j < cols; ++j)
              (*s)[picked[i] * cols + j] += self.grad[i * cols + j];
        }
      });
}

Var ConcatRows(std::span<const Var> parts) {
  if (parts.empty()) Mismatch("concat_rows", "no inputs");
  const size_t cols = parts[0].value().last_dim();
  size_t rows = 0;
  std::vector<size_t> offsets;
  for (const Var& p : parts) {
    if (p.shape().size() != 2 || p.shape()[1] != cols) {
      Mismatch("concat_rows", ShapeToString(p.shape()));
    }
    offsets.push_back(rows * cols);
    rows += p.shape()[0];
  }
  Tensor y(Shape{rows, cols});
  for (size_t i = 0; i < parts.size(); ++i) {
    std::copy(parts[i].value().data.begin(), parts[i].value().data.end(),
              y.data.begin() + static_cast<std::ptrdiff_t>(offsets[i]));
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return GraphOf(parts[0]).Record(
      "concat_rows", inputs, std::move(y),
      [offsets](Graph& g, const Node& self) {
        for (size_t i = 0; i < self.inputs.size(); ++i) {
          if (Tensor* s = g.GradSink(self.inputs[i])) {
            for (size_t j = 0; j < s->size(); ++j)
              (*s)[j] += self.grad[offsets[i] + j];
          }
        }
      });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) Mismatch("concat_cols", "no inputs");
  const size_t rows = parts[0].shape().empty() ? 0 : parts[0].shape()[0];
  std::vector<size_t> widths;
  size_t total = 0;
  for (const Var& p : parts) {
    if (p.shape().size() != 2 || p.shape()[0] != rows) {
      Mismatch("concat_cols", ShapeToString(p.shape()));
    }
    widths.push_back(p.shape()[1]);
    total += p.shape()[1];
  }
  Tensor y(Shape{rows, total});
  size_t col = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t r = 0; r < rows; ++r)
      std::copy_n(parts[i].value().data.data() + r * widths[i], widths[i],
                  y.data.data() + r * total + col);
    col += widths[i];
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return GraphOf(parts[0]).Record(
      "concat_cols", inputs, std::move(y),
      [widths, rows, total](Graph& g, const Node& self) {
        size_t col = 0;
        for (size_t i = 0; i < self.inputs.size(); ++i) {
          if (Tensor* s = g.GradSink(self.inputs[i])) {
            for (size_t r = 0; r < rows; ++r)
              for (size_t j = 0; j < widths[i]; ++j)
                (*s)[r * widths[i] + j] += self.grad[r * total + col + j];
          }
          col += widths[i];
        }
      });
}

Var Pick(Var a, std::span<const size_t> indices) {
  std::vector<size_t> picked(indices.begin(), indices.end());
  Tensor y(Shape{picked.size()});
  for (size_t i = 0; i < picked.size(); ++i) {
    if (picked[i] >= a.value().size()) {
      Mismatch("pick", "index " + std::to_string(picked[i]) + " of " +
                           std::to_string(a.value().size()));
    }
    y[i] = a.value()[picked[i]];
  }
  return GraphOf(a).Record("pick", {a}, std::move(y),
                           [picked = std::move(picked)](Graph& g, const Node& self) {
                             if (Tensor* s = g.GradSink(self.inputs[0])) {
                               for (size_t i = 0; i < picked.size(); ++i)
                                 (*s)[picked[i]] += self.grad[i];
                             }
                           });
}

Var CrossEntropyWithLogits(Var logits, std::span<const int32_t> targets) {
  RequireRank("cross_entropy", logits, 2);
  const size_t rows = logits.shape()[0];
  const size_t cols = logits.shape()[1];
  if (targets.size() != rows || rows == 0) {
    Mismatch("cross_entropy", ShapeToString(logits.shape()) + " with " +
                                  std::to_string(targets.size()) + " targets");
  }
  std::vector<int32_t> tgt(targets.begin(), targets.end());
  Tensor probs(Shape{rows, cols});
  double total = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    if (tgt[r] < 0 || static_cast<size_t>(tgt[r]) >= cols) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "target " + std::to_string(tgt[r]) + " with " +
                      std::to_string(cols) + " classes");
    }
    const double* xr = logits.value().data.data() + r * cols;
    const double mx = *std::max_element(xr, xr + cols);
    double z = 0.0;
    for (size_t j = 0; j < cols; ++j) z += (probs[r * cols + j] = std::exp(xr[j] - mx));
    for (size_t j = 0; j < cols; ++j) probs[r * cols + j] /= z;
    total += mx + std::log(z) - xr[tgt[r]];
  }
  return GraphOf(logits).Record(
      "cross_entropy", {logits}, Tensor::Scalar(total / static_cast<double>(rows)),
      [rows, cols, tgt = std::move(tgt), probs = std::move(probs)](
          Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          const double scale = self.grad[0] / static_cast<double>(rows);
          for (size_t r = 0; r < rows; ++r) {
            for (size_t j = 0; j < cols; ++j) {
              const double onehot = static_cast<size_t>(tgt[r]) == j ? 1.0 : 0.0;
              (*s)[r * cols + j] += scale * (probs[r * cols + j] - onehot);
            }
          }
        }
      });
}

Var MaskedLogSumExp(Var x, std::span<const uint8_t> keep) {
  RequireRank("masked_logsumexp", x, 2);
  const size_t rows = x.shape()[0];
  const size_t cols = x.shape()[1];
  if (keep.size() != rows * cols) {
    Mismatch("masked_logsumexp", ShapeToString(x.shape()) + " with mask of " +
                                     std::to_string(keep.size()));
  }
  std::vector<uint8_t> mask(keep.begin(), keep.end());
  Tensor y(Shape{rows});
  Tensor weights(Shape{rows, cols});
  for (size_t r = 0; r < rows; ++r) {
    const double* xr = x.value().data.data() + r * cols;
    const uint8_t* kr = mask.data() + r * cols;
    double mx = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < cols; ++j)
      if (kr[j]) mx = std::max(mx, xr[j]);
    if (!std::isfinite(mx)) {
      Mismatch("masked_logsumexp", "row " + std::to_string(r) + " keeps nothing");
    }
    double z = 0.0;
    for (size_t j = 0; j < cols; ++j) {
      const double e = kr[j] ? std::exp(xr[j] - mx) : 0.0;
      weights[r * cols + j] = e;
      z += e;
    }
    for (size_t j = 0; j < cols; ++j) weights[r * cols + j] /= z;
    y[r] = mx + std::log(z);
  }
  return GraphOf(x).Record(
      "masked_logsumexp", {x}, std::move(y),
      [cols, weights = std::move(weights)](Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t i = 0; i < s->size(); ++i)
            (*s)[i] += self.grad[i / cols] * weights[i];
        }
      });
}

Var Dropout(Var x, double p, std::mt19937_64& rng) {
  if (p <= 0.0) return x;
  if (p >= 1.0) {
    throw Error(ErrorCode::kOutOfRange, "dropout probability must be < 1");
  }
  const double keep_scale = 1.0 / (1.0 - p);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Tensor factors(x.shape());
  for (double& f : factors.data) f = uniform(rng) < p ? 0.0 : keep_scale;
  Tensor y = x.value();
  for (size_t i = 0; i < y.size(); ++i) y[i] *= factors[i];
  return GraphOf(x).Record(
      "dropout", {x}, std::move(y),
      [factors = std::move(factors)](Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t i = 0; i < s->size(); ++i)
            (*s)[i] += self.grad[i] * factors[i];
        }
      });
}

Var NormalizeRows(Var x) {
  if (x.shape().empty()) Mismatch("normalize_rows", "scalar input");
  const size_t cols = x.value().last_dim();
  const size_t rows = x.value().leading_size();
  if (cols == 0) Mismatch("normalize_rows", "zero-length rows");
  Tensor y(x.shape());
  std::vector<double> norms(rows);
  for (size_t r = 0; r < rows; ++r) {
    const double* xr = x.value().data.data() + r * cols;
    double sq = 0.0;
    for (size_t j = 0; j < cols; ++j) sq += xr[j] * xr[j];
    norms[r] = std::sqrt(sq);
    if (norms[r] < kMinNorm) {
      throw Error(ErrorCode::kZeroNorm, "row " + std::to_string(r) +
                                            " has norm below 1e-12");
    }
    for (size_t j = 0; j < cols; ++j) y[r * cols + j] = xr[j] / norms[r];
  }
  return GraphOf(x).Record(
      "normalize_rows", {x}, std::move(y),
      [rows, cols, norms = std::move(norms)](Graph& g, const Node& self) {
        if (Tensor* s = g.GradSink(self.inputs[0])) {
          for (size_t r = 0; r < rows; ++r) {
            const double* yr = self.value.data.data() + r * cols;
            const double* dy = self.grad.data.data() + r * cols;
            double dot = 0.0;
            for (size_t j = 0; j < cols; ++j) dot += yr[j] * dy[j];
            for (size_t j = 0; j < cols; ++j)
              (*s)[r * cols + j] += (dy[j] - yr[j] * dot) / norms[r];
          }
        }
      });
}

Var CosineSimilarity(Var a, Var b) {
  RequireRank("cosine_similarity", a, 1);
  RequireSameShape("cosine_similarity", a, b);
  if (a.shape()[0] == 0) Mismatch("cosine_similarity", "empty vectors");
  const Shape row{1, a.shape()[0]};
  return Reshape(RowCosine(Reshape(a, row), Reshape(b, row)), Shape{});
}

Var PairwiseCosine(Var a, Var b) {
  RequireRank("pairwise_cosine", a, 2);
  RequireRank("pairwise_cosine", b, 2);
  if (a.shape()[1] != b.shape()[1]) {
    Mismatch("pairwise_cosine",
             ShapeToString(a.shape()) + " vs " + ShapeToString(b.shape()));
  }
  return MatMul(NormalizeRows(a), NormalizeRows(b), /*transpose_b=*/true);
}

Var RowCosine(Var a, Var b) {
  RequireRank("row_cosine", a, 2);
  RequireSameShape("row_cosine", a, b);
  return RowSum(Mul(NormalizeRows(a), NormalizeRows(b)));
}

}  // namespace mabel::ops
