// svkit/nn/layers.h

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

#ifndef SVKIT_NN_LAYERS_H_
#define SVKIT_NN_LAYERS_H_

#include <string>
#include <vector>

#include "svkit/nn/graph.h"
#include "svkit/nn/ops.h"
#include "svkit/nn/params.h"

namespace svkit {
namespace nn {

enum class Mode { kTrain, kEval };

// Activations are channel-major: [channels x time] in 1-d, and
// [channels x H*W] in 2-d with spatial index h*W + w.

struct Conv1d {
  Conv1d(ParamStore& ps, const std::string& name, int in_ch, int out_ch,
         int k, int dilation = 1);
  Var forward(Graph& g, Var x) const;  // [in_ch x T] -> [out_ch x T]

  Parameter* weight;  // [out_ch x in_ch*k], column j*in_ch + c
  Parameter* bias;    // [out_ch x 1]
  int in_ch, out_ch, k, dilation;
};

struct Conv2d {
  Conv2d(ParamStore& ps, const std::string& name, int in_ch, int out_ch,
         int k, int stride, int pad);
  // [in_ch x H*W] -> [out_ch x Ho*Wo]; caller tracks Ho, Wo via out_dim.
  Var forward(Graph& g, Var x, int H, int W) const;
  static int out_dim(int in, int k, int stride, int pad) {
    return (in + 2 * pad - k) / stride + 1;
  }

  Parameter* weight;  // [out_ch x in_ch*k*k]
  Parameter* bias;    // [out_ch x 1]
  int in_ch, out_ch, k, stride, pad;
};

// Normalizes each channel over the time (or spatial) axis of the single
// utterance being processed, in both modes, so train and eval activations
// share one distribution. Train mode also folds the utterance moments into
// running buffers; the buffers are saved as diagnostics only.
struct BatchNorm {
  BatchNorm(ParamStore& ps, const std::string& name, int channels,
            double momentum = 0.1, double eps = 1e-5);
  Var forward(Graph& g, Var x, Mode mode) const;

  Parameter* gamma;     // [C x 1]
  Parameter* beta;      // [C x 1]
  Parameter* run_mean;  // buffer [C x 1]
  Parameter* run_var;   // buffer [C x 1]
  int channels;
  double momentum, eps;
};

struct Linear {
  Linear(ParamStore& ps, const std::string& name, int in_dim, int out_dim,
         bool with_bias = true);
  Var forward(Graph& g, Var x) const;  // [in x n] -> [out x n]

  Parameter* weight;  // [out x in]
  Parameter* bias;    // [out x 1] or nullptr
  int in_dim, out_dim;
};

struct SqueezeExcite {
  SqueezeExcite(ParamStore& ps, const std::string& name, int channels,
                int reduction);
  // force_identity bypasses the gates (used to probe the plain
  // convolutional receptive field).
  Var forward(Graph& g, Var x, bool force_identity) const;

  Linear fc1, fc2;
  int channels;
};

// SE-Res2 block: 1x1 conv, hierarchical dilated 3x1 group convs, 1x1
// conv, squeeze-excitation, residual add. Channel count is preserved.
struct SeRes2Block {
  SeRes2Block(ParamStore& ps, const std::string& name, int channels, int k,
              int dilation, int scale, int se_reduction);
  // se_identity bypasses the SE gates; norm_identity bypasses the batch
  // norms. Both exist so structural probes can isolate the conv wiring,
  // whose locality the data-dependent normalization would otherwise hide.
  Var forward(Graph& g, Var x, Mode mode, bool se_identity,
              bool norm_identity = false) const;

  Conv1d conv_in;
  std::vector<Conv1d> res2;  // scale - 1 convs over channels/scale groups
  Conv1d conv_out;
  BatchNorm bn_in, bn_mid, bn_out;
  SqueezeExcite se;
  int channels, scale;
};

// Attentive statistics pooling: [C x T] -> [2C x 1] of weighted mean and
// standard deviation. With context, attention sees [h; mu; sigma] rows.
struct AttentiveStatsPool {
  AttentiveStatsPool(ParamStore& ps, const std::string& name, int channels,
                     int att_channels, bool context);
  Var forward(Graph& g, Var h) const;

  Linear fc1, fc2;
  int channels;
  bool context;
};

}  // namespace nn
}  // namespace svkit

#endif  // SVKIT_NN_LAYERS_H_
