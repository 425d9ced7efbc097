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

#include "mabel/core/graph.h"

#include "mabel/core/error.h"

namespace mabel {

const Tensor& Var::value() const { return graph_->value(*this); }

Var Graph::Constant(Tensor value) {
  Node node;
  node.op = "constant";
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Graph::Parameter(Tensor value) {
  Node node;
  node.op = "parameter";
  node.value = std::move(value);
  node.requires_grad = true;
  node.is_parameter = true;
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Graph::Record(std::string_view op, const std::vector<Var>& inputs,
                  Tensor value, BackwardFn backward) {
  const size_t id = nodes_.size();
  if (!value.AllFinite()) {
    throw Error(ErrorCode::kNonFinite,
                "node " + std::to_string(id) + " (" + std::string(op) + ")");
  }
  Node node;
  node.op = op;
  node.value = std::move(value);
  node.inputs.reserve(inputs.size());
  for (const Var& in : inputs) {
    if (in.graph() != this) {
      throw Error(ErrorCode::kShapeMismatch,
                  std::string(op) + ": input belongs to another graph");
    }
    node.inputs.push_back(in.id());
    node.requires_grad = node.requires_grad || nodes_[in.id()].requires_grad;
  }
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, id);
}

Tensor* Graph::GradSink(size_t id) {
  Node& node = nodes_[id];
  if (!node.requires_grad) return nullptr;
  if (node.grad.size() != node.value.size() || node.grad.shape != node.value.shape) {
    node.grad = Tensor::Zeros(node.value.shape);
  }
  return &node.grad;
}

void Graph::Backward(Var loss) {
  const Node& root = nodes_.at(loss.id());
  if (root.value.size() != 1) {
    throw Error(ErrorCode::kNotScalar,
                "loss has shape " + ShapeToString(root.value.shape));
  }
  for (Node& node : nodes_) node.grad = Tensor();
  if (!root.requires_grad) return;
  nodes_[loss.id()].grad = Tensor::Filled(root.value.shape, 1.0);
  for (size_t i = loss.id() + 1; i-- > 0;) {
    const Node& node = nodes_[i];
    if (!node.backward || node.grad.size() == 0) continue;
    node.backward(*this, node);
  }
}

Tensor Graph::Grad(Var v) {
  const Node& node = nodes_.at(v.id());
  if (node.grad.size() == node.value.size() && node.value.size() > 0) {
    return node.grad;
  }
  warnings_.push_back("DisconnectedInput: node " + std::to_string(v.id()) +
                      " (" + std::string(node.op) +
                      ") is not reachable from the loss; gradient is zero");
  return Tensor::Zeros(node.value.shape);
}

}  // namespace mabel
