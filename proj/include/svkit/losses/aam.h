// svkit/losses/aam.h

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

#ifndef SVKIT_LOSSES_AAM_H_
#define SVKIT_LOSSES_AAM_H_

#include <vector>

#include "svkit/nn/graph.h"
#include "svkit/nn/ops.h"
#include "svkit/nn/params.h"

namespace svkit {

struct AamConfig {
  double scale = 30.0;
  double margin = 0.2;

  // ConfigError unless scale > 0 and 0 <= margin < pi/2.
  void validate() const;
};

struct AamLoss {
  nn::Var loss;    // [1 x 1] mean cross entropy
  nn::Var logits;  // [B x N] scaled cosines with the target margin applied
};

// Additive-angular-margin softmax. emb is [B x D] raw embeddings (one row
// per example); both the embeddings and the head rows are L2-normalized on
// the tape, so the loss is invariant to their magnitudes. Labels index
// head rows; out-of-range labels raise InputError.
AamLoss aam_softmax_loss(nn::Graph& g, nn::Var emb,
                         const std::vector<int>& labels, nn::Parameter* head,
                         const AamConfig& cfg);

}  // namespace svkit

#endif  // SVKIT_LOSSES_AAM_H_
