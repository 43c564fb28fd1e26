// svkit/models/embed.cc

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

#include "svkit/models/embed.h"

#include "svkit/nn/graph.h"

namespace svkit {

Eigen::VectorXd embed_utterance(SpeakerEncoder& model, const Waveform& w,
                                const FeatureConfig& feat) {
  const FeatureMatrix f = mean_normalize(compute_log_mel(w, feat));
  nn::Graph g;
  const nn::Var emb = model.forward(g, f, nn::Mode::kEval);
  return emb->value.col(0);
}

}  // namespace svkit
