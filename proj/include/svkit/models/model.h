// svkit/models/model.h

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

#ifndef SVKIT_MODELS_MODEL_H_
#define SVKIT_MODELS_MODEL_H_

#include <memory>
#include <string>

#include "svkit/feat/fbank.h"
#include "svkit/nn/layers.h"
#include "svkit/nn/params.h"

namespace svkit {

// Architecture hyperparameters. channels is the ECAPA frame width C, or
// the final-stage width c4 of the ResNet (earlier stages are c4/8, c4/4,
// c4/2). embedding_dim 0 derives the width from channels.
struct ModelConfig {
  std::string arch = "ecapa";  // "ecapa" or "resnet34se"
  int n_mels = 80;
  int channels = 512;
  int embedding_dim = 0;
  int res2_scale = 8;
  int se_reduction = 8;
  int att_channels = 128;
  int n_speakers = 0;  // 0 builds no classifier head

  // ConfigError on out-of-range fields or an unknown arch.
  void validate() const;

  // embedding_dim if set; otherwise 256 for the largest published
  // configuration of each arch (C=2048, c4=512) and 192 below it.
  int resolved_embedding_dim() const;

  // Flat "key value" lines, one per field, parse round-trippable.
  std::string to_text() const;
  static ModelConfig from_text(const std::string& text);

  bool operator==(const ModelConfig& o) const;
};

// A speaker embedding encoder plus (optionally) its classifier head.
// forward() maps T x n_mels features to a [D x 1] embedding node on the
// caller's graph. Minimum input length is min_frames().
class SpeakerEncoder {
 public:
  virtual ~SpeakerEncoder() = default;

  virtual nn::Var forward(nn::Graph& g, const FeatureMatrix& f,
                          nn::Mode mode) = 0;

  const ModelConfig& config() const { return cfg_; }
  int embedding_dim() const { return cfg_.resolved_embedding_dim(); }
  int min_frames() const { return 16; }

  nn::ParamStore& params() { return *params_; }
  const nn::ParamStore& params() const { return *params_; }

  // Classifier rows, [n_speakers x D], unit-norm at init; nullptr when
  // the model was built headless.
  nn::Parameter* head() { return head_; }

 protected:
  SpeakerEncoder(const ModelConfig& cfg, uint64_t seed);

  ModelConfig cfg_;
  std::unique_ptr<nn::ParamStore> params_;
  nn::Parameter* head_ = nullptr;
};

// Validates cfg and constructs the requested architecture; all tensors
// are initialized from the seed alone.
std::unique_ptr<SpeakerEncoder> build_model(const ModelConfig& cfg,
                                            uint64_t seed);

}  // namespace svkit

#endif  // SVKIT_MODELS_MODEL_H_
