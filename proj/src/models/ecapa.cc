// svkit/models/ecapa.cc

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

#include "svkit/models/ecapa.h"

namespace svkit {

using nn::Graph;
using nn::Mode;
using nn::Var;

EcapaModel::EcapaModel(const ModelConfig& cfg, uint64_t seed)
    : SpeakerEncoder(cfg, seed),
      conv1_(*params_, "frame.conv1", cfg.n_mels, cfg.channels, 5),
      bn1_(*params_, "frame.bn1", cfg.channels),
      mfa_conv_(*params_, "mfa.conv", 3 * cfg.channels, 3 * cfg.channels, 1),
      mfa_bn_(*params_, "mfa.bn", 3 * cfg.channels),
      pool_(*params_, "pool", 3 * cfg.channels, cfg.att_channels,
            /*context=*/true),
      emb_(*params_, "emb.linear", 6 * cfg.channels,
           cfg.resolved_embedding_dim()) {
  const int dilations[3] = {2, 3, 4};
  blocks_.reserve(3);
  for (int i = 0; i < 3; ++i)
    blocks_.emplace_back(*params_, "block" + std::to_string(i + 1),
                         cfg.channels, 3, dilations[i], cfg.res2_scale,
                         cfg.se_reduction);
}

Var EcapaModel::frame_features(Graph& g, const FeatureMatrix& f, Mode mode,
                               bool se_identity) {
  if (f.cols() != cfg_.n_mels)
    throw InputError("ecapa expects " + std::to_string(cfg_.n_mels) +
                     "-dim features, got " + std::to_string(f.cols()));
  if (f.rows() < min_frames())
    throw InputError("ecapa needs at least " + std::to_string(min_frames()) +
                     " frames, got " + std::to_string(f.rows()));
  Var x = g.constant(f.transpose());
  Var h = bn1_.forward(g, relu(g, conv1_.forward(g, x)), mode);
  Var h1 = blocks_[0].forward(g, h, mode, se_identity);
  Var h2 = blocks_[1].forward(g, h1, mode, se_identity);
  Var h3 = blocks_[2].forward(g, h2, mode, se_identity);
  Var cat = concat_rows(g, {h1, h2, h3});
  return mfa_bn_.forward(g, relu(g, mfa_conv_.forward(g, cat)), mode);
}

Var EcapaModel::forward(Graph& g, const FeatureMatrix& f, Mode mode) {
  Var frames = frame_features(g, f, mode, /*se_identity=*/false);
  return emb_.forward(g, pool_.forward(g, frames));
}

}  // namespace svkit
