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

#include "mabel/core/tensor.h"

#include <cmath>
#include <sstream>

#include "mabel/core/error.h"

namespace mabel {

size_t ShapeSize(const Shape& shape) {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  return n;
}

std::string ShapeToString(const Shape& shape) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) out << "x";
    out << shape[i];
  }
  out << "]";
  return out.str();
}

Tensor::Tensor(Shape s, std::vector<double> values)
    : shape(std::move(s)), data(std::move(values)) {
  if (ShapeSize(shape) != data.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "shape " + ShapeToString(shape) + " holds " +
                    std::to_string(ShapeSize(shape)) + " values, got " +
                    std::to_string(data.size()));
  }
}

Tensor Tensor::Filled(Shape s, double value) {
  Tensor t(std::move(s));
  for (double& v : t.data) v = value;
  return t;
}

Tensor Tensor::Vector(std::vector<double> values) {
  const size_t n = values.size();
  return Tensor(Shape{n}, std::move(values));
}

Tensor Tensor::Matrix(size_t rows, size_t cols, std::vector<double> values) {
  return Tensor(Shape{rows, cols}, std::move(values));
}

bool Tensor::AllFinite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace mabel
