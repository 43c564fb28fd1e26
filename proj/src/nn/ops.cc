// src/nn/ops.cc

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

#include "svkit/nn/ops.h"

#include <cmath>
#include <string>

namespace svkit {
namespace nn {

namespace {

void CheckSameShape(Var a, Var b, const char* op) {
  if (a->value.rows() != b->value.rows() ||
      a->value.cols() != b->value.cols())
    throw InputError(std::string(op) + ": shape mismatch " +
                     std::to_string(a->value.rows()) + "x" +
                     std::to_string(a->value.cols()) + " vs " +
                     std::to_string(b->value.rows()) + "x" +
                     std::to_string(b->value.cols()));
}

}  // namespace

Var add(Graph& g, Var a, Var b) {
  CheckSameShape(a, b, "add");
  Var out = g.create(a->value + b->value, {a, b});
  out->backward = [a, b](const Tensor& gy, auto& accum) {
    accum(a, gy);
    accum(b, gy);
  };
  return out;
}

Var sub(Graph& g, Var a, Var b) {
  CheckSameShape(a, b, "sub");
  Var out = g.create(a->value - b->value, {a, b});
  out->backward = [a, b](const Tensor& gy, auto& accum) {
    accum(a, gy);
    accum(b, -gy);
  };
  return out;
}

Var mul(Graph& g, Var a, Var b) {
  CheckSameShape(a, b, "mul");
  Var out = g.create(a->value.cwiseProduct(b->value), {a, b});
  out->backward = [a, b](const Tensor& gy, auto& accum) {
    accum(a, gy.cwiseProduct(b->value));
    accum(b, gy.cwiseProduct(a->value));
  };
  return out;
}

Var scale(Graph& g, Var a, double s) {
  Var out = g.create(a->value * s, {a});
  out->backward = [a, s](const Tensor& gy, auto& accum) { accum(a, gy * s); };
  return out;
}

Var add_scalar(Graph& g, Var a, double s) {
  Var out = g.create(a->value.array() + s, {a});
  out->backward = [a](const Tensor& gy, auto& accum) { accum(a, gy); };
  return out;
}

Var relu(Graph& g, Var a) {
  Var out = g.create(a->value.cwiseMax(0.0), {a});
  out->backward = [a](const Tensor& gy, auto& accum) {
    accum(a, (a->value.array() > 0.0).select(gy, Tensor::Zero(gy.rows(), gy.cols())));
  };
  return out;
}

Var tanh_op(Graph& g, Var a) {
  Var out = g.create(a->value.array().tanh(), {a});
  out->backward = [a, out](const Tensor& gy, auto& accum) {
    accum(a, gy.array() * (1.0 - out->value.array().square()));
  };
  return out;
}

Var sigmoid_op(Graph& g, Var a) {
  Tensor y = (1.0 / (1.0 + (-a->value.array()).exp())).matrix();
  Var out = g.create(std::move(y), {a});
  out->backward = [a, out](const Tensor& gy, auto& accum) {
    accum(a,
          gy.array() * out->value.array() * (1.0 - out->value.array()));
  };
  return out;
}

Var square(Graph& g, Var a) {
  Var out = g.create(a->value.array().square(), {a});
  out->backward = [a](const Tensor& gy, auto& accum) {
    accum(a, 2.0 * gy.cwiseProduct(a->value));
  };
  return out;
}

Var sqrt_op(Graph& g, Var a) {
  if ((a->value.array() <= 0.0).any())
    throw InputError("sqrt_op requires strictly positive entries");
  Var out = g.create(a->value.array().sqrt(), {a});
  out->backward = [a, out](const Tensor& gy, auto& accum) {
    accum(a, (gy.array() / (2.0 * out->value.array())).matrix());
  };
  return out;
}

Var clamp_min(Graph& g, Var a, double m) {
  Var out = g.create(a->value.cwiseMax(m), {a});
  out->backward = [a, m](const Tensor& gy, auto& accum) {
    accum(a, (a->value.array() > m)
                 .select(gy, Tensor::Zero(gy.rows(), gy.cols())));
  };
  return out;
}

Var matmul(Graph& g, Var a, Var b) {
  if (a->value.cols() != b->value.rows())
    throw InputError("matmul: inner dims " + std::to_string(a->value.cols()) +
                     " vs " + std::to_string(b->value.rows()));
  Var out = g.create(a->value * b->value, {a, b});
  out->backward = [a, b](const Tensor& gy, auto& accum) {
    if (a->requires_grad) accum(a, gy * b->value.transpose());
    if (b->requires_grad) accum(b, a->value.transpose() * gy);
  };
  return out;
}

Var transpose(Graph& g, Var a) {
  Var out = g.create(a->value.transpose(), {a});
  out->backward = [a](const Tensor& gy, auto& accum) {
    accum(a, gy.transpose());
  };
  return out;
}

Var softmax_rows(Graph& g, Var a) {
  Tensor y = a->value;
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    const double m = y.row(r).maxCoeff();
    y.row(r) = (y.row(r).array() - m).exp();
    y.row(r) /= y.row(r).sum();
  }
  Var out = g.create(std::move(y), {a});
  out->backward = [a, out](const Tensor& gy, auto& accum) {
    Tensor gx(gy.rows(), gy.cols());
    for (Eigen::Index r = 0; r < gy.rows(); ++r) {
      const double dot = gy.row(r).dot(out->value.row(r));
      gx.row(r) =
          out->value.row(r).cwiseProduct((gy.row(r).array() - dot).matrix());
    }
    accum(a, gx);
  };
  return out;
}

Var row_sum(Graph& g, Var a) {
  Var out = g.create(a->value.rowwise().sum(), {a});
  const int n = static_cast<int>(a->value.cols());
  out->backward = [a, n](const Tensor& gy, auto& accum) {
    accum(a, gy * Eigen::RowVectorXd::Ones(n));
  };
  return out;
}

Var row_mean(Graph& g, Var a) {
  Var out = g.create(a->value.rowwise().mean(), {a});
  const int n = static_cast<int>(a->value.cols());
  out->backward = [a, n](const Tensor& gy, auto& accum) {
    accum(a, (gy / n) * Eigen::RowVectorXd::Ones(n));
  };
  return out;
}

Var sum_all(Graph& g, Var a) {
  Tensor y(1, 1);
  y(0, 0) = a->value.sum();
  Var out = g.create(std::move(y), {a});
  out->backward = [a](const Tensor& gy, auto& accum) {
    accum(a, Tensor::Constant(a->value.rows(), a->value.cols(), gy(0, 0)));
  };
  return out;
}

Var mean_all(Graph& g, Var a) {
  Tensor y(1, 1);
  y(0, 0) = a->value.mean();
  Var out = g.create(std::move(y), {a});
  out->backward = [a](const Tensor& gy, auto& accum) {
    accum(a, Tensor::Constant(a->value.rows(), a->value.cols(),
                              gy(0, 0) / a->value.size()));
  };
  return out;
}

Var concat_rows(Graph& g, const std::vector<Var>& parts) {
  if (parts.empty()) throw InputError("concat_rows: no inputs");
  Eigen::Index rows = 0;
  const Eigen::Index cols = parts[0]->value.cols();
  for (Var p : parts) {
    if (p->value.cols() != cols)
      throw InputError("concat_rows: column mismatch");
    rows += p->value.rows();
  }
  Tensor y(rows, cols);
  Eigen::Index r = 0;
  for (Var p : parts) {
    y.middleRows(r, p->value.rows()) = p->value;
    r += p->value.rows();
  }
  Var out = g.create(std::move(y), parts);
  std::vector<Var> ins = parts;
  out->backward = [ins](const Tensor& gy, auto& accum) {
    Eigen::Index r = 0;
    for (Var p : ins) {
      accum(p, gy.middleRows(r, p->value.rows()));
      r += p->value.rows();
    }
  };
  return out;
}

Var concat_cols(Graph& g, const std::vector<Var>& parts) {
  if (parts.empty()) throw InputError("concat_cols: no inputs");
  Eigen::Index cols = 0;
  const Eigen::Index rows = parts[0]->value.rows();
  for (Var p : parts) {
    if (p->value.rows() != rows) throw InputError("concat_cols: row mismatch");
    cols += p->value.cols();
  }
  Tensor y(rows, cols);
  Eigen::Index c = 0;
  for (Var p : parts) {
    y.middleCols(c, p->value.cols()) = p->value;
    c += p->value.cols();
  }
  Var out = g.create(std::move(y), parts);
  std::vector<Var> ins = parts;
  out->backward = [ins](const Tensor& gy, auto& accum) {
    Eigen::Index c = 0;
    for (Var p : ins) {
      accum(p, gy.middleCols(c, p->value.cols()));
      c += p->value.cols();
    }
  };
  return out;
}

Var slice_rows(Graph& g, Var a, int row0, int nrows) {
  if (row0 < 0 || nrows <= 0 || row0 + nrows > a->value.rows())
    throw InputError("slice_rows: out of range");
  Var out = g.create(a->value.middleRows(row0, nrows), {a});
  out->backward = [a, row0, nrows](const Tensor& gy, auto& accum) {
    Tensor gx = Tensor::Zero(a->value.rows(), a->value.cols());
    gx.middleRows(row0, nrows) = gy;
    accum(a, gx);
  };
  return out;
}

Var broadcast_cols(Graph& g, Var a, int n) {
  if (a->value.cols() != 1) throw InputError("broadcast_cols expects [m x 1]");
  Var out = g.create(a->value * Eigen::RowVectorXd::Ones(n), {a});
  out->backward = [a](const Tensor& gy, auto& accum) {
    accum(a, gy.rowwise().sum());
  };
  return out;
}

Var add_col(Graph& g, Var a, Var bias) {
  if (bias->value.cols() != 1 || bias->value.rows() != a->value.rows())
    throw InputError("add_col: bias must be [rows(a) x 1]");
  Tensor y = a->value;
  y.colwise() += Eigen::VectorXd(bias->value.col(0));
  Var out = g.create(std::move(y), {a, bias});
  out->backward = [a, bias](const Tensor& gy, auto& accum) {
    accum(a, gy);
    accum(bias, gy.rowwise().sum());
  };
  return out;
}

Var scale_rows(Graph& g, Var a, Var s) {
  if (s->value.cols() != 1 || s->value.rows() != a->value.rows())
    throw InputError("scale_rows: scale must be [rows(a) x 1]");
  Tensor y = a->value.array().colwise() * s->value.col(0).array();
  Var out = g.create(std::move(y), {a, s});
  out->backward = [a, s](const Tensor& gy, auto& accum) {
    accum(a, (gy.array().colwise() * s->value.col(0).array()).matrix());
    accum(s, gy.cwiseProduct(a->value).rowwise().sum());
  };
  return out;
}

Var l2norm_rows(Graph& g, Var a) {
  Eigen::VectorXd norms = a->value.rowwise().norm();
  if ((norms.array() < 1e-12).any())
    throw InputError("l2norm_rows: near-zero row norm");
  Tensor y = a->value.array().colwise() / norms.array();
  Var out = g.create(std::move(y), {a});
  out->backward = [a, out, norms](const Tensor& gy, auto& accum) {
    Tensor gx(gy.rows(), gy.cols());
    for (Eigen::Index r = 0; r < gy.rows(); ++r) {
      const double dot = gy.row(r).dot(out->value.row(r));
      gx.row(r) = (gy.row(r) - dot * out->value.row(r)) / norms(r);
    }
    accum(a, gx);
  };
  return out;
}

Var norm_rows(Graph& g, Var a, double eps) {
  const Eigen::Index n = a->value.cols();
  if (n < 1) throw InputError("norm_rows: empty input");
  Eigen::VectorXd mean = a->value.rowwise().mean();
  Tensor centered = a->value.colwise() - mean;
  Eigen::VectorXd var = centered.array().square().rowwise().mean();
  Eigen::VectorXd inv_sd = (var.array() + eps).rsqrt();
  Tensor y = centered.array().colwise() * inv_sd.array();
  Var out = g.create(std::move(y), {a});
  out->backward = [a, out, inv_sd](const Tensor& gy, auto& accum) {
    Tensor gx(gy.rows(), gy.cols());
    for (Eigen::Index r = 0; r < gy.rows(); ++r) {
      const double gmean = gy.row(r).mean();
      const double gxhat = gy.row(r).dot(out->value.row(r)) / gy.cols();
      gx.row(r) = inv_sd(r) * (gy.row(r).array() - gmean -
                               out->value.row(r).array() * gxhat);
    }
    accum(a, gx);
  };
  return out;
}

Var im2col1d(Graph& g, Var x, int k, int dilation) {
  if (k < 1 || k % 2 == 0) throw InputError("im2col1d: kernel must be odd");
  if (dilation < 1) throw InputError("im2col1d: dilation must be >= 1");
  const int C = static_cast<int>(x->value.rows());
  const int T = static_cast<int>(x->value.cols());
  Tensor y = Tensor::Zero(static_cast<Eigen::Index>(C) * k, T);
  for (int j = 0; j < k; ++j) {
    const int off = (j - (k - 1) / 2) * dilation;
    const int t0 = std::max(0, -off);
    const int t1 = std::min(T, T - off);
    if (t1 <= t0) continue;
    y.block(static_cast<Eigen::Index>(j) * C, t0, C, t1 - t0) =
        x->value.block(0, t0 + off, C, t1 - t0);
  }
  Var out = g.create(std::move(y), {x});
  out->backward = [x, k, dilation, C, T](const Tensor& gy, auto& accum) {
    Tensor gx = Tensor::Zero(C, T);
    for (int j = 0; j < k; ++j) {
      const int off = (j - (k - 1) / 2) * dilation;
      const int t0 = std::max(0, -off);
      const int t1 = std::min(T, T - off);
      if (t1 <= t0) continue;
      gx.block(0, t0 + off, C, t1 - t0) +=
          gy.block(static_cast<Eigen::Index>(j) * C, t0, C, t1 - t0);
    }
    accum(x, gx);
  };
  return out;
}

Var im2col2d(Graph& g, Var x, int H, int W, int kh, int kw, int sh, int sw,
             int ph, int pw) {
  const int C = static_cast<int>(x->value.rows());
  if (x->value.cols() != static_cast<Eigen::Index>(H) * W)
    throw InputError("im2col2d: spatial size mismatch");
  if (kh < 1 || kw < 1 || sh < 1 || sw < 1 || ph < 0 || pw < 0)
    throw InputError("im2col2d: bad geometry");
  const int Ho = (H + 2 * ph - kh) / sh + 1;
  const int Wo = (W + 2 * pw - kw) / sw + 1;
  if (Ho < 1 || Wo < 1) throw InputError("im2col2d: empty output");

  Tensor y = Tensor::Zero(static_cast<Eigen::Index>(C) * kh * kw,
                          static_cast<Eigen::Index>(Ho) * Wo);
  for (int ih = 0; ih < kh; ++ih) {
    for (int iw = 0; iw < kw; ++iw) {
      const Eigen::Index row0 =
          (static_cast<Eigen::Index>(ih) * kw + iw) * C;
      for (int ho = 0; ho < Ho; ++ho) {
        const int h = ho * sh - ph + ih;
        if (h < 0 || h >= H) continue;
        for (int wo = 0; wo < Wo; ++wo) {
          const int w = wo * sw - pw + iw;
          if (w < 0 || w >= W) continue;
          y.block(row0, static_cast<Eigen::Index>(ho) * Wo + wo, C, 1) =
              x->value.col(static_cast<Eigen::Index>(h) * W + w);
        }
      }
    }
  }
  Var out = g.create(std::move(y), {x});
  out->backward = [x, H, W, kh, kw, sh, sw, ph, pw, C, Ho,
                   Wo](const Tensor& gy, auto& accum) {
    Tensor gx = Tensor::Zero(C, static_cast<Eigen::Index>(H) * W);
    for (int ih = 0; ih < kh; ++ih) {
      for (int iw = 0; iw < kw; ++iw) {
        const Eigen::Index row0 =
            (static_cast<Eigen::Index>(ih) * kw + iw) * C;
        for (int ho = 0; ho < Ho; ++ho) {
          const int h = ho * sh - ph + ih;
          if (h < 0 || h >= H) continue;
          for (int wo = 0; wo < Wo; ++wo) {
            const int w = wo * sw - pw + iw;
            if (w < 0 || w >= W) continue;
            gx.col(static_cast<Eigen::Index>(h) * W + w) +=
                gy.block(row0, static_cast<Eigen::Index>(ho) * Wo + wo, C, 1);
          }
        }
      }
    }
    accum(x, gx);
  };
  return out;
}

Var flatten_chw(Graph& g, Var x, int H, int W) {
  const Eigen::Index C = x->value.rows();
  if (x->value.cols() != static_cast<Eigen::Index>(H) * W)
    throw InputError("flatten_chw: map is not H*W columns");
  Tensor y(C * H, W);
  for (Eigen::Index c = 0; c < C; ++c)
    for (int h = 0; h < H; ++h)
      for (int w = 0; w < W; ++w)
        y(c * H + h, w) = x->value(c, static_cast<Eigen::Index>(h) * W + w);
  Var out = g.create(std::move(y), {x});
  out->backward = [x, H, W, C](const Tensor& gy, auto& accum) {
    Tensor gx(C, static_cast<Eigen::Index>(H) * W);
    for (Eigen::Index c = 0; c < C; ++c)
      for (int h = 0; h < H; ++h)
        for (int w = 0; w < W; ++w)
          gx(c, static_cast<Eigen::Index>(h) * W + w) = gy(c * H + h, w);
    accum(x, gx);
  };
  return out;
}

Var aam_margin(Graph& g, Var cosines, const std::vector<int>& labels,
               double margin) {
  const Eigen::Index B = cosines->value.rows();
  const Eigen::Index N = cosines->value.cols();
  if (static_cast<Eigen::Index>(labels.size()) != B)
    throw InputError("aam_margin: one label per row required");
  const double cos_m = std::cos(margin), sin_m = std::sin(margin);
  const double lim = 1.0 - 1e-7;
  Tensor y = cosines->value;
  for (Eigen::Index b = 0; b < B; ++b) {
    const int t = labels[b];
    if (t < 0 || t >= N) throw InputError("aam_margin: label out of range");
    const double c = std::clamp(y(b, t), -lim, lim);
    y(b, t) = c * cos_m - std::sqrt(1.0 - c * c) * sin_m;
  }
  Var out = g.create(std::move(y), {cosines});
  std::vector<int> labs = labels;
  out->backward = [cosines, labs, cos_m, sin_m, lim](const Tensor& gy,
                                                     auto& accum) {
    Tensor gx = gy;
    for (size_t b = 0; b < labs.size(); ++b) {
      const double c = cosines->value(static_cast<Eigen::Index>(b), labs[b]);
      double d = 0.0;
      if (std::abs(c) < lim)
        d = cos_m + c * sin_m / std::sqrt(1.0 - c * c);
      gx(static_cast<Eigen::Index>(b), labs[b]) *= d;
    }
    accum(cosines, gx);
  };
  return out;
}

Var cross_entropy_mean(Graph& g, Var logits,
                       const std::vector<int>& labels) {
  const Eigen::Index B = logits->value.rows();
  const Eigen::Index N = logits->value.cols();
  if (static_cast<Eigen::Index>(labels.size()) != B)
    throw InputError("cross_entropy_mean: one label per row required");
  Tensor probs(B, N);
  double loss = 0.0;
  for (Eigen::Index b = 0; b < B; ++b) {
    const int t = labels[b];
    if (t < 0 || t >= N)
      throw InputError("cross_entropy_mean: label out of range");
    const double m = logits->value.row(b).maxCoeff();
    const Eigen::RowVectorXd shifted = logits->value.row(b).array() - m;
    const double lse = m + std::log(shifted.array().exp().sum());
    probs.row(b) = (logits->value.row(b).array() - lse).exp();
    loss += lse - logits->value(b, t);
  }
  Tensor y(1, 1);
  y(0, 0) = loss / B;
  Var out = g.create(std::move(y), {logits});
  std::vector<int> labs = labels;
  out->backward = [logits, labs, probs, B](const Tensor& gy, auto& accum) {
    Tensor gx = probs;
    for (size_t b = 0; b < labs.size(); ++b)
      gx(static_cast<Eigen::Index>(b), labs[b]) -= 1.0;
    accum(logits, gx * (gy(0, 0) / B));
  };
  return out;
}

}  // namespace nn
}  // namespace svkit
