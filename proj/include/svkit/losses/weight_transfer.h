// svkit/losses/weight_transfer.h

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

#ifndef SVKIT_LOSSES_WEIGHT_TRANSFER_H_
#define SVKIT_LOSSES_WEIGHT_TRANSFER_H_

#include <unordered_map>
#include <vector>

#include "svkit/nn/params.h"

namespace svkit {

// kGlobal treats all matched tensors as one flattened vector and takes a
// single Euclidean norm; kPerTensor sums the per-tensor norms.
enum class WtNorm { kGlobal, kPerTensor };

// One anchored tensor: the frozen pre-trained value and its trained twin.
struct WeightPair {
  const nn::Parameter* source;
  nn::Parameter* target;
};

// Pairs every learnable target tensor outside the "head." namespace with
// its same-named source tensor. Buffers (running statistics) are excluded.
// ConfigError names the first missing or shape-mismatched tensor.
std::vector<WeightPair> match_weights(const nn::ParamStore& source,
                                      nn::ParamStore& target);

// Distance between the anchored weight sets; the source side is constant.
double weight_transfer_loss(const std::vector<WeightPair>& pairs,
                            WtNorm norm = WtNorm::kGlobal);

struct FinetuneLossConfig {
  double lambda_wt = 1.0;
  double weight_decay = 2e-4;
  WtNorm norm = WtNorm::kGlobal;

  // ConfigError on negative coefficients.
  void validate() const;
};

struct FinetuneLossParts {
  double total = 0.0;
  double ce = 0.0;
  double wt = 0.0;
  double l2 = 0.0;  // sum of squared learnable entries, before the decay factor
};

// total = ce + lambda_wt * wt + weight_decay * l2, where l2 spans every
// learnable tensor of the target store (the head included).
FinetuneLossParts finetune_total_loss(double ce,
                                      const std::vector<WeightPair>& pairs,
                                      const nn::ParamStore& target,
                                      const FinetuneLossConfig& cfg);

// Accumulates the analytic gradients of the non-CE terms into grads:
// lambda_wt * (Wt - Ws) / norm per matched tensor and 2 * weight_decay * W
// per learnable tensor. Zero-distance anchors contribute nothing.
void add_finetune_grads(const std::vector<WeightPair>& pairs,
                        const nn::ParamStore& target,
                        const FinetuneLossConfig& cfg,
                        std::unordered_map<const nn::Parameter*, nn::Tensor>& grads);

}  // namespace svkit

#endif  // SVKIT_LOSSES_WEIGHT_TRANSFER_H_
