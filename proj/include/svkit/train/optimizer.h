// svkit/train/optimizer.h

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

#ifndef SVKIT_TRAIN_OPTIMIZER_H_
#define SVKIT_TRAIN_OPTIMIZER_H_

#include <unordered_map>

#include "svkit/nn/params.h"

namespace svkit {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  // ConfigError unless both betas lie in [0, 1) and eps > 0.
  void validate() const;
};

// Bias-corrected Adam over a parameter store. Moment estimates are keyed
// by tensor identity and created on first use; buffers and tensors absent
// from the gradient map are left untouched.
class Adam {
 public:
  explicit Adam(const AdamConfig& cfg);

  void step(nn::ParamStore& store,
            const std::unordered_map<const nn::Parameter*, nn::Tensor>& grads,
            double lr);

  long steps_taken() const { return t_; }

 private:
  AdamConfig cfg_;
  long t_ = 0;
  std::unordered_map<const nn::Parameter*, nn::Tensor> m_, v_;
};

}  // namespace svkit

#endif  // SVKIT_TRAIN_OPTIMIZER_H_
