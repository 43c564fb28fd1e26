// svkit/models/ecapa.h

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

#ifndef SVKIT_MODELS_ECAPA_H_
#define SVKIT_MODELS_ECAPA_H_

#include <memory>
#include <vector>

#include "svkit/models/model.h"

namespace svkit {

// ECAPA-TDNN: k=5 frame conv to C channels, three SE-Res2 blocks at
// dilations 2/3/4, concatenation of the block outputs (3C), a 1x1
// aggregation conv kept at 3C, context-aware attentive stats pooling
// (6C), and a linear map to the embedding.
class EcapaModel : public SpeakerEncoder {
 public:
  EcapaModel(const ModelConfig& cfg, uint64_t seed);

  nn::Var forward(nn::Graph& g, const FeatureMatrix& f,
                  nn::Mode mode) override;

  // Frame-level map before pooling, [3C x T]. se_identity bypasses the
  // SE gates of every block for receptive-field probes.
  nn::Var frame_features(nn::Graph& g, const FeatureMatrix& f, nn::Mode mode,
                         bool se_identity);

 private:
  nn::Conv1d conv1_;
  nn::BatchNorm bn1_;
  std::vector<nn::SeRes2Block> blocks_;
  nn::Conv1d mfa_conv_;
  nn::BatchNorm mfa_bn_;
  nn::AttentiveStatsPool pool_;
  nn::Linear emb_;
};

}  // namespace svkit

#endif  // SVKIT_MODELS_ECAPA_H_
