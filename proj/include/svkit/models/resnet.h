// svkit/models/resnet.h

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

#ifndef SVKIT_MODELS_RESNET_H_
#define SVKIT_MODELS_RESNET_H_

#include <memory>
#include <vector>

#include "svkit/models/model.h"

namespace svkit {

// Two 3x3 convs with a (possibly projected) shortcut.
struct ResnetBasicBlock {
  ResnetBasicBlock(nn::ParamStore& ps, const std::string& name, int in_ch,
                   int out_ch, int stride);
  // Caller tracks the spatial dims; H and W describe the input map.
  nn::Var forward(nn::Graph& g, nn::Var x, int H, int W, nn::Mode mode) const;

  nn::Conv2d conv1, conv2;
  nn::BatchNorm bn1, bn2;
  std::unique_ptr<nn::Conv2d> down_conv;
  std::unique_ptr<nn::BatchNorm> down_bn;
  int stride;
};

// ResNet34-SE: 3x3 stem, stages of (3, 4, 6, 3) basic blocks at strides
// (1, 2, 2, 2) with squeeze-excitation after each stage, frequency/channel
// flattening into (n_mels/8 * c4)-dim frames, attentive stats pooling, and
// a linear map to the embedding.
class ResnetModel : public SpeakerEncoder {
 public:
  ResnetModel(const ModelConfig& cfg, uint64_t seed);

  nn::Var forward(nn::Graph& g, const FeatureMatrix& f,
                  nn::Mode mode) override;

  // Frame-level map before pooling: the stride-8 feature map with its
  // frequency and channel axes flattened, [(n_mels/8 * c4) x ceil(T/8)].
  nn::Var frame_features(nn::Graph& g, const FeatureMatrix& f, nn::Mode mode);

 private:
  nn::Conv2d stem_conv_;
  nn::BatchNorm stem_bn_;
  std::vector<std::vector<ResnetBasicBlock>> stages_;
  std::vector<nn::SqueezeExcite> stage_se_;
  nn::AttentiveStatsPool pool_;
  nn::Linear emb_;
};

}  // namespace svkit

#endif  // SVKIT_MODELS_RESNET_H_
