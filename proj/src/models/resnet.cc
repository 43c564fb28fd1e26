// svkit/models/resnet.cc

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

#include "svkit/models/resnet.h"

namespace svkit {

using nn::Graph;
using nn::Mode;
using nn::Var;

namespace {
// Frequency bins surviving the stage strides (1, 2, 2, 2).
int FreqOut(int n_mels) {
  int h = n_mels;
  for (int s = 0; s < 3; ++s) h = nn::Conv2d::out_dim(h, 3, 2, 1);
  return h;
}
}  // namespace

ResnetBasicBlock::ResnetBasicBlock(nn::ParamStore& ps, const std::string& name,
                                   int in_ch, int out_ch, int stride)
    : conv1(ps, name + ".conv1", in_ch, out_ch, 3, stride, 1),
      conv2(ps, name + ".conv2", out_ch, out_ch, 3, 1, 1),
      bn1(ps, name + ".bn1", out_ch),
      bn2(ps, name + ".bn2", out_ch),
      stride(stride) {
  if (stride != 1 || in_ch != out_ch) {
    down_conv = std::make_unique<nn::Conv2d>(ps, name + ".down.conv", in_ch,
                                             out_ch, 1, stride, 0);
    down_bn = std::make_unique<nn::BatchNorm>(ps, name + ".down.bn", out_ch);
  }
}

Var ResnetBasicBlock::forward(Graph& g, Var x, int H, int W,
                              Mode mode) const {
  Var y = bn1.forward(g, relu(g, conv1.forward(g, x, H, W)), mode);
  const int Ho = nn::Conv2d::out_dim(H, 3, stride, 1);
  const int Wo = nn::Conv2d::out_dim(W, 3, stride, 1);
  y = bn2.forward(g, relu(g, conv2.forward(g, y, Ho, Wo)), mode);
  Var shortcut = x;
  if (down_conv)
    shortcut = down_bn->forward(g, down_conv->forward(g, x, H, W), mode);
  return add(g, y, shortcut);
}

ResnetModel::ResnetModel(const ModelConfig& cfg, uint64_t seed)
    : SpeakerEncoder(cfg, seed),
      stem_conv_(*params_, "stem.conv", 1, cfg.channels / 8, 3, 1, 1),
      stem_bn_(*params_, "stem.bn", cfg.channels / 8),
      pool_(*params_, "pool", cfg.channels * FreqOut(cfg.n_mels),
            cfg.att_channels, /*context=*/false),
      emb_(*params_, "emb.linear", 2 * cfg.channels * FreqOut(cfg.n_mels),
           cfg.resolved_embedding_dim()) {
  const int widths[4] = {cfg.channels / 8, cfg.channels / 4, cfg.channels / 2,
                         cfg.channels};
  const int depths[4] = {3, 4, 6, 3};
  const int strides[4] = {1, 2, 2, 2};
  int in_ch = cfg.channels / 8;
  stages_.resize(4);
  for (int s = 0; s < 4; ++s) {
    const std::string stage = "stage" + std::to_string(s + 1);
    for (int b = 0; b < depths[s]; ++b) {
      stages_[s].emplace_back(*params_, stage + ".block" + std::to_string(b + 1),
                              in_ch, widths[s], b == 0 ? strides[s] : 1);
      in_ch = widths[s];
    }
    stage_se_.emplace_back(*params_, stage + ".se", widths[s],
                           cfg.se_reduction);
  }
}

Var ResnetModel::forward(Graph& g, const FeatureMatrix& f, Mode mode) {
  return emb_.forward(g, pool_.forward(g, frame_features(g, f, mode)));
}

Var ResnetModel::frame_features(Graph& g, const FeatureMatrix& f, Mode mode) {
  if (f.cols() != cfg_.n_mels)
    throw InputError("resnet34se expects " + std::to_string(cfg_.n_mels) +
                     "-dim features, got " + std::to_string(f.cols()));
  if (f.rows() < min_frames())
    throw InputError("resnet34se needs at least " +
                     std::to_string(min_frames()) + " frames, got " +
                     std::to_string(f.rows()));
  int H = cfg_.n_mels;
  int W = static_cast<int>(f.rows());
  nn::Tensor plane(1, static_cast<Eigen::Index>(H) * W);
  for (int h = 0; h < H; ++h)
    for (int w = 0; w < W; ++w)
      plane(0, static_cast<Eigen::Index>(h) * W + w) = f(w, h);
  Var x = g.constant(std::move(plane));
  x = stem_bn_.forward(g, relu(g, stem_conv_.forward(g, x, H, W)), mode);
  for (size_t s = 0; s < stages_.size(); ++s) {
    for (const ResnetBasicBlock& blk : stages_[s]) {
      x = blk.forward(g, x, H, W, mode);
      H = nn::Conv2d::out_dim(H, 3, blk.stride, 1);
      W = nn::Conv2d::out_dim(W, 3, blk.stride, 1);
    }
    x = stage_se_[s].forward(g, x, /*force_identity=*/false);
  }
  // H is n_mels/8 here; frames become (H * c4)-dim columns.
  return flatten_chw(g, x, H, W);
}

}  // namespace svkit
