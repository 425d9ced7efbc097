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

#ifndef MABEL_CORE_GRAPH_H_
#define MABEL_CORE_GRAPH_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mabel/core/tensor.h"

namespace mabel {

class Graph;

// Handle to a node of a Graph. Cheap to copy; only valid while the graph
// that produced it is alive.
class Var {
 public:
  Var() = default;
  Var(Graph* graph, size_t id) : graph_(graph), id_(id) {}

  bool valid() const { return graph_ != nullptr; }
  Graph* graph() const { return graph_; }
  size_t id() const { return id_; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape; }

 private:
  Graph* graph_ = nullptr;
  size_t id_ = 0;
};

struct Node;
using BackwardFn = std::function<void(Graph& graph, const Node& self)>;

struct Node {
  std::string_view op;
  std::vector<size_t> inputs;
  Tensor value;
  Tensor grad;  // Empty until a gradient reaches this node.
  bool requires_grad = false;
  bool is_parameter = false;
  BackwardFn backward;
};

// Define-by-run tape. Nodes are appended in evaluation order, which is a
// topological order, so backward is a single reverse sweep that visits each
// node once. A graph and its tensors belong to one thread at a time.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var Constant(Tensor value);
  Var Parameter(Tensor value);

  // Appends an op node. Throws NonFinite (naming the node) when the freshly
  // computed value contains NaN or Inf. The backward function is dropped when
  // no input needs a gradient.
  Var Record(std::string_view op, const std::vector<Var>& inputs, Tensor value,
             BackwardFn backward);

  const Node& node(size_t id) const { return nodes_.at(id); }
  const Tensor& value(Var v) const { return nodes_.at(v.id()).value; }
  size_t size() const { return nodes_.size(); }

  // Gradient accumulation buffer of an input, or nullptr when that input does
  // not require a gradient. Used by backward functions.
  Tensor* GradSink(size_t id);

  // Reverse sweep from a scalar loss. Clears gradients from any previous call.
  void Backward(Var loss);

  // Gradient of a node after Backward. Nodes unreachable from the loss get an
  // all-zero gradient and a DisconnectedInput warning.
  Tensor Grad(Var v);

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<Node> nodes_;
  std::vector<std::string> warnings_;
};

}  // namespace mabel

#endif  // MABEL_CORE_GRAPH_H_
