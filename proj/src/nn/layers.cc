// src/nn/layers.cc

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

#include "svkit/nn/layers.h"

#include <cmath>

namespace svkit {
namespace nn {

Conv1d::Conv1d(ParamStore& ps, const std::string& name, int in_ch,
               int out_ch, int k, int dilation)
    : in_ch(in_ch), out_ch(out_ch), k(k), dilation(dilation) {
  if (in_ch <= 0 || out_ch <= 0 || k <= 0 || k % 2 == 0 || dilation <= 0)
    throw ConfigError("conv1d '" + name + "' has invalid geometry");
  weight = ps.add(name + ".weight", out_ch, in_ch * k, Init::kFanInNormal);
  bias = ps.add(name + ".bias", out_ch, 1, Init::kZeros);
}

Var Conv1d::forward(Graph& g, Var x) const {
  if (x->value.rows() != in_ch)
    throw InputError("conv1d expects " + std::to_string(in_ch) +
                     " input channels");
  Var w = g.param(weight);
  Var b = g.param(bias);
  Var cols = k == 1 ? x : im2col1d(g, x, k, dilation);
  return add_col(g, matmul(g, w, cols), b);
}

Conv2d::Conv2d(ParamStore& ps, const std::string& name, int in_ch,
               int out_ch, int k, int stride, int pad)
    : in_ch(in_ch), out_ch(out_ch), k(k), stride(stride), pad(pad) {
  if (in_ch <= 0 || out_ch <= 0 || k <= 0 || stride <= 0 || pad < 0)
    throw ConfigError("conv2d '" + name + "' has invalid geometry");
  weight = ps.add(name + ".weight", out_ch, in_ch * k * k,
                  Init::kFanInNormal);
  bias = ps.add(name + ".bias", out_ch, 1, Init::kZeros);
}

Var Conv2d::forward(Graph& g, Var x, int H, int W) const {
  if (x->value.rows() != in_ch)
    throw InputError("conv2d expects " + std::to_string(in_ch) +
                     " input channels");
  Var w = g.param(weight);
  Var b = g.param(bias);
  Var cols = im2col2d(g, x, H, W, k, k, stride, stride, pad, pad);
  return add_col(g, matmul(g, w, cols), b);
}

BatchNorm::BatchNorm(ParamStore& ps, const std::string& name, int channels,
                     double momentum, double eps)
    : channels(channels), momentum(momentum), eps(eps) {
  gamma = ps.add(name + ".gamma", channels, 1, Init::kOnes);
  beta = ps.add(name + ".beta", channels, 1, Init::kZeros);
  run_mean = ps.add_buffer(name + ".running_mean", channels, 1, 0.0);
  run_var = ps.add_buffer(name + ".running_var", channels, 1, 1.0);
}

Var BatchNorm::forward(Graph& g, Var x, Mode mode) const {
  if (x->value.rows() != channels)
    throw InputError("batchnorm expects " + std::to_string(channels) +
                     " channels");
  if (mode == Mode::kTrain) {
    Eigen::VectorXd mean = x->value.rowwise().mean();
    Eigen::VectorXd var =
        (x->value.colwise() - mean).array().square().rowwise().mean();
    run_mean->value.col(0) =
        (1.0 - momentum) * run_mean->value.col(0) + momentum * mean;
    run_var->value.col(0) =
        (1.0 - momentum) * run_var->value.col(0) + momentum * var;
  }
  Var xhat = norm_rows(g, x, eps);
  return add_col(g, scale_rows(g, xhat, g.param(gamma)), g.param(beta));
}

Linear::Linear(ParamStore& ps, const std::string& name, int in_dim,
               int out_dim, bool with_bias)
    : in_dim(in_dim), out_dim(out_dim) {
  weight = ps.add(name + ".weight", out_dim, in_dim, Init::kFanInNormal);
  bias = with_bias ? ps.add(name + ".bias", out_dim, 1, Init::kZeros)
                   : nullptr;
}

Var Linear::forward(Graph& g, Var x) const {
  if (x->value.rows() != in_dim)
    throw InputError("linear expects " + std::to_string(in_dim) + " rows");
  Var y = matmul(g, g.param(weight), x);
  return bias ? add_col(g, y, g.param(bias)) : y;
}

namespace {
int SeHidden(int channels, int reduction) {
  if (reduction < 1 || channels % reduction != 0)
    throw ConfigError("squeeze-excite reduction " + std::to_string(reduction) +
                      " does not divide " + std::to_string(channels) +
                      " channels");
  return channels / reduction;
}
}  // namespace

SqueezeExcite::SqueezeExcite(ParamStore& ps, const std::string& name,
                             int channels, int reduction)
    : fc1(ps, name + ".fc1", channels, SeHidden(channels, reduction)),
      fc2(ps, name + ".fc2", SeHidden(channels, reduction), channels),
      channels(channels) {}

Var SqueezeExcite::forward(Graph& g, Var x, bool force_identity) const {
  if (force_identity) return x;
  Var z = row_mean(g, x);
  Var gates = sigmoid_op(g, fc2.forward(g, relu(g, fc1.forward(g, z))));
  return scale_rows(g, x, gates);
}

SeRes2Block::SeRes2Block(ParamStore& ps, const std::string& name,
                         int channels, int k, int dilation, int scale,
                         int se_reduction)
    : conv_in(ps, name + ".conv_in", channels, channels, 1),
      conv_out(ps, name + ".conv_out", channels, channels, 1),
      bn_in(ps, name + ".bn_in", channels),
      bn_mid(ps, name + ".bn_mid", channels),
      bn_out(ps, name + ".bn_out", channels),
      se(ps, name + ".se", channels, se_reduction),
      channels(channels),
      scale(scale) {
  if (scale < 2 || channels % scale != 0)
    throw ConfigError("res2 block '" + name +
                      "' needs channels divisible by scale >= 2");
  const int group = channels / scale;
  for (int i = 1; i < scale; ++i)
    res2.emplace_back(ps, name + ".res2." + std::to_string(i), group, group,
                      k, dilation);
}

Var SeRes2Block::forward(Graph& g, Var x, Mode mode, bool se_identity,
                         bool norm_identity) const {
  auto norm = [&](const BatchNorm& bn, Var v) {
    return norm_identity ? v : bn.forward(g, v, mode);
  };
  Var h = norm(bn_in, relu(g, conv_in.forward(g, x)));

  // Hierarchical group convolutions: group 0 passes through, each later
  // group convolves its slice plus the previous group's output.
  const int group = channels / scale;
  std::vector<Var> ys;
  ys.push_back(slice_rows(g, h, 0, group));
  for (int i = 1; i < scale; ++i) {
    Var xi = slice_rows(g, h, i * group, group);
    if (i > 1) xi = add(g, xi, ys.back());
    ys.push_back(res2[i - 1].forward(g, xi));
  }
  Var r = norm(bn_mid, relu(g, concat_rows(g, ys)));

  Var o = norm(bn_out, relu(g, conv_out.forward(g, r)));
  return add(g, se.forward(g, o, se_identity), x);
}

AttentiveStatsPool::AttentiveStatsPool(ParamStore& ps,
                                       const std::string& name, int channels,
                                       int att_channels, bool context)
    : fc1(ps, name + ".fc1", context ? 3 * channels : channels,
          att_channels),
      fc2(ps, name + ".fc2", att_channels, channels),
      channels(channels),
      context(context) {}

Var AttentiveStatsPool::forward(Graph& g, Var h) const {
  if (h->value.rows() != channels)
    throw InputError("stats pool expects " + std::to_string(channels) +
                     " channels");
  if (h->value.cols() < 2)
    throw InputError("stats pool needs at least 2 frames, got " +
                     std::to_string(h->value.cols()));
  const int T = static_cast<int>(h->value.cols());
  Var att_in = h;
  if (context) {
    Var mu_g = row_mean(g, h);
    Var var_g = clamp_min(
        g, sub(g, row_mean(g, square(g, h)), square(g, mu_g)), 1e-8);
    Var sd_g = sqrt_op(g, var_g);
    att_in = concat_rows(
        g, {h, broadcast_cols(g, mu_g, T), broadcast_cols(g, sd_g, T)});
  }
  Var e = fc2.forward(g, tanh_op(g, fc1.forward(g, att_in)));
  Var alpha = softmax_rows(g, e);

  Var mu = row_sum(g, mul(g, h, alpha));
  Var m2 = row_sum(g, mul(g, square(g, h), alpha));
  Var sd = sqrt_op(g, clamp_min(g, sub(g, m2, square(g, mu)), 1e-8));
  return concat_rows(g, {mu, sd});
}

}  // namespace nn
}  // namespace svkit
