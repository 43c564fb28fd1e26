// svkit/nn/graph.h

// Copyright 2026  The svkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SVKIT_NN_GRAPH_H_
#define SVKIT_NN_GRAPH_H_

#include <Eigen/Dense>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "svkit/common.h"

namespace svkit {
namespace nn {

using Tensor = Eigen::MatrixXd;

struct Parameter;

// One value on the tape. Nodes are owned by the Graph and valid until the
// graph is destroyed; creation order is a topological order.
struct Node {
  Tensor value;
  std::vector<Node*> inputs;
  // Receives dL/d(value) and accumulates into the inputs via the sink.
  std::function<void(const Tensor&,
                     const std::function<void(Node*, const Tensor&)>&)>
      backward;
  Parameter* param = nullptr;  // set on parameter leaves
  bool requires_grad = false;
  size_t id = 0;
};

using Var = Node*;

struct GradMap {
  std::unordered_map<const Parameter*, Tensor> params;
  std::unordered_map<const Node*, Tensor> leaves;

  const Tensor& of(const Parameter* p) const;
  const Tensor& of(const Node* leaf) const;
};

// Reverse-mode tape. One graph per training step; forward calls append
// nodes, backward() sweeps them once in reverse.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Constant leaf, never receives a gradient.
  Var constant(Tensor value);

  // Differentiable leaf for inputs under test.
  Var input(Tensor value);

  // Leaf bound to a stored parameter; the value is snapshotted.
  Var param(Parameter* p);

  // Interior node. requires_grad is inherited from the inputs; the
  // backward callback is assigned by the op after creation.
  Var create(Tensor value, std::vector<Var> inputs);

  // Single reverse sweep from a 1x1 loss node. Intermediate gradients are
  // released as soon as their node has been processed.
  GradMap backward(Var loss);

  size_t size() const { return nodes_.size(); }

 private:
  std::deque<std::unique_ptr<Node>> nodes_;
};

}  // namespace nn
}  // namespace svkit

#endif  // SVKIT_NN_GRAPH_H_
