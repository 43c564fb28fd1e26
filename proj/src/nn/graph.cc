// src/nn/graph.cc

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

#include "svkit/nn/graph.h"

#include <functional>

#include "svkit/nn/params.h"

namespace svkit {
namespace nn {

const Tensor& GradMap::of(const Parameter* p) const {
  auto it = params.find(p);
  if (it == params.end())
    throw InputError("no gradient for parameter '" + p->name + "'");
  return it->second;
}

const Tensor& GradMap::of(const Node* leaf) const {
  auto it = leaves.find(leaf);
  if (it == leaves.end()) throw InputError("no gradient for leaf node");
  return it->second;
}

Var Graph::constant(Tensor value) {
  auto node = std::make_unique<Node>();
  node->value = std::move(value);
  node->requires_grad = false;
  node->id = nodes_.size();
  nodes_.push_back(std::move(node));
  return nodes_.back().get();
}

Var Graph::input(Tensor value) {
  Var v = constant(std::move(value));
  v->requires_grad = true;
  return v;
}

Var Graph::param(Parameter* p) {
  Var v = constant(p->value);
  v->requires_grad = !p->is_buffer;
  v->param = p;
  return v;
}

Var Graph::create(Tensor value, std::vector<Var> inputs) {
  auto node = std::make_unique<Node>();
  node->value = std::move(value);
  node->inputs = std::move(inputs);
  for (Var in : node->inputs)
    if (in->requires_grad) node->requires_grad = true;
  node->id = nodes_.size();
  nodes_.push_back(std::move(node));
  return nodes_.back().get();
}

GradMap Graph::backward(Var loss) {
  if (loss->value.rows() != 1 || loss->value.cols() != 1)
    throw InputError("backward expects a 1x1 loss node");
  std::unordered_map<Node*, Tensor> grads;
  grads[loss] = Tensor::Ones(1, 1);

  auto accum = [&grads](Node* n, const Tensor& g) {
    if (!n->requires_grad) return;
    auto it = grads.find(n);
    if (it == grads.end())
      grads.emplace(n, g);
    else
      it->second += g;
  };

  GradMap result;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    Node* n = it->get();
    auto g_it = grads.find(n);
    if (g_it == grads.end()) continue;
    // Detach before invoking backward: accum may rehash the map.
    Tensor gy = std::move(g_it->second);
    grads.erase(g_it);
    if (n->backward) {
      n->backward(gy, accum);
    } else if (n->param) {
      auto p_it = result.params.find(n->param);
      if (p_it == result.params.end())
        result.params.emplace(n->param, std::move(gy));
      else
        p_it->second += gy;
    } else {
      result.leaves.emplace(n, std::move(gy));
    }
  }
  return result;
}

}  // namespace nn
}  // namespace svkit
