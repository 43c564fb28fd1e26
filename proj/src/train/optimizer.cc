// svkit/train/optimizer.cc

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

#include "svkit/train/optimizer.h"

#include <cmath>

namespace svkit {

void AdamConfig::validate() const {
  if (!(beta1 >= 0.0) || beta1 >= 1.0 || !(beta2 >= 0.0) || beta2 >= 1.0)
    throw ConfigError("Adam betas must lie in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("Adam eps must be positive");
}

Adam::Adam(const AdamConfig& cfg) : cfg_(cfg) { cfg.validate(); }

void Adam::step(
    nn::ParamStore& store,
    const std::unordered_map<const nn::Parameter*, nn::Tensor>& grads,
    double lr) {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (const auto& item : store.items()) {
    if (item->is_buffer) continue;
    const auto it = grads.find(item.get());
    if (it == grads.end()) continue;
    const nn::Tensor& g = it->second;
    if (g.rows() != item->value.rows() || g.cols() != item->value.cols())
      throw InputError("gradient shape mismatch for " + item->name);
    nn::Tensor& m = m_.try_emplace(item.get(),
                                   nn::Tensor::Zero(g.rows(), g.cols()))
                        .first->second;
    nn::Tensor& v = v_.try_emplace(item.get(),
                                   nn::Tensor::Zero(g.rows(), g.cols()))
                        .first->second;
    m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
    v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * g.cwiseProduct(g);
    const nn::Tensor mhat = m / bc1;
    const nn::Tensor vhat = v / bc2;
    item->value -=
        lr * mhat.cwiseQuotient((vhat.cwiseSqrt().array() + cfg_.eps).matrix());
  }
}

}  // namespace svkit
