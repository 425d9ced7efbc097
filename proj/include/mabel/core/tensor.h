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

#ifndef MABEL_CORE_TENSOR_H_
#define MABEL_CORE_TENSOR_H_

#include <cstddef>
#include <string>
#include <vector>

namespace mabel {

using Shape = std::vector<size_t>;

size_t ShapeSize(const Shape& shape);
std::string ShapeToString(const Shape& shape);

// Dense row-major tensor of doubles. The value type carried through every
// graph node; gradients live next to it in the graph, not here.
struct Tensor {
  Shape shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(Shape s) : shape(std::move(s)), data(ShapeSize(shape), 0.0) {}
  Tensor(Shape s, std::vector<double> values);

  static Tensor Zeros(Shape s) { return Tensor(std::move(s)); }
  static Tensor Filled(Shape s, double value);
  static Tensor Scalar(double value) { return Tensor(Shape{}, {value}); }
  static Tensor Vector(std::vector<double> values);
  static Tensor Matrix(size_t rows, size_t cols, std::vector<double> values);

  size_t size() const { return data.size(); }
  size_t rank() const { return shape.size(); }
  size_t dim(size_t axis) const { return shape.at(axis); }
  // Size of the last axis, 1 for scalars.
  size_t last_dim() const { return shape.empty() ? 1 : shape.back(); }
  // Product of all axes but the last.
  size_t leading_size() const { return shape.empty() ? 1 : size() / shape.back(); }

  double& operator[](size_t i) { return data[i]; }
  double operator[](size_t i) const { return data[i]; }
  double& at(size_t row, size_t col) { return data[row * last_dim() + col]; }
  double at(size_t row, size_t col) const { return data[row * last_dim() + col]; }

  bool AllFinite() const;
};

}  // namespace mabel

#endif  // MABEL_CORE_TENSOR_H_
