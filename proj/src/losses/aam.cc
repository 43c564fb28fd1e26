// svkit/losses/aam.cc

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

#include "svkit/losses/aam.h"

#include <cmath>

namespace svkit {

void AamConfig::validate() const {
  if (!(scale > 0.0)) throw ConfigError("aam scale must be positive");
  if (!(margin >= 0.0) || margin >= M_PI / 2)
    throw ConfigError("aam margin must be in [0, pi/2)");
}

AamLoss aam_softmax_loss(nn::Graph& g, nn::Var emb,
                         const std::vector<int>& labels, nn::Parameter* head,
                         const AamConfig& cfg) {
  cfg.validate();
  if (head == nullptr) throw ConfigError("aam loss needs a classifier head");
  if (emb->value.cols() != head->value.cols())
    throw InputError("aam loss: embedding dim " +
                     std::to_string(emb->value.cols()) +
                     " != head dim " + std::to_string(head->value.cols()));
  if (static_cast<Eigen::Index>(labels.size()) != emb->value.rows())
    throw InputError("aam loss: one label per embedding row required");
  nn::Var e = l2norm_rows(g, emb);
  nn::Var w = l2norm_rows(g, g.param(head));
  nn::Var cosines = matmul(g, e, transpose(g, w));
  nn::Var logits =
      scale(g, aam_margin(g, cosines, labels, cfg.margin), cfg.scale);
  return {cross_entropy_mean(g, logits, labels), logits};
}

}  // namespace svkit
