// svkit/nn/ops.h

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

#ifndef SVKIT_NN_OPS_H_
#define SVKIT_NN_OPS_H_

#include <vector>

#include "svkit/nn/graph.h"

namespace svkit {
namespace nn {

// Shapes in comments use [rows x cols]. All ops check operand shapes and
// throw InputError on mismatch.

Var add(Graph& g, Var a, Var b);        // same shape
Var sub(Graph& g, Var a, Var b);        // same shape
Var mul(Graph& g, Var a, Var b);        // elementwise, same shape
Var scale(Graph& g, Var a, double s);
Var add_scalar(Graph& g, Var a, double s);

Var relu(Graph& g, Var a);
Var tanh_op(Graph& g, Var a);
Var sigmoid_op(Graph& g, Var a);
Var square(Graph& g, Var a);
Var sqrt_op(Graph& g, Var a);           // entries must be > 0
Var clamp_min(Graph& g, Var a, double m);

Var matmul(Graph& g, Var a, Var b);     // [m x k] * [k x n]
Var transpose(Graph& g, Var a);

Var softmax_rows(Graph& g, Var a);      // softmax along each row
Var row_sum(Graph& g, Var a);           // [m x n] -> [m x 1]
Var row_mean(Graph& g, Var a);          // [m x n] -> [m x 1]
Var sum_all(Graph& g, Var a);           // -> [1 x 1]
Var mean_all(Graph& g, Var a);          // -> [1 x 1]

Var concat_rows(Graph& g, const std::vector<Var>& parts);  // stack vertically
Var concat_cols(Graph& g, const std::vector<Var>& parts);  // side by side
Var slice_rows(Graph& g, Var a, int row0, int nrows);
Var broadcast_cols(Graph& g, Var a, int n);  // [m x 1] -> [m x n]
Var add_col(Graph& g, Var a, Var bias);      // bias [m x 1] added per column
Var scale_rows(Graph& g, Var a, Var s);      // row i scaled by s(i, 0)

// Unit L2 norm per row; rows with norm < 1e-12 are rejected.
Var l2norm_rows(Graph& g, Var a);

// Per-row standardization over columns: (x - mean) / sqrt(var + eps) with
// the biased variance. Core of the time-axis batch norm.
Var norm_rows(Graph& g, Var a, double eps);

// 1-d patch extraction for channels-by-time maps. x [C x T], odd kernel k,
// zero padding keeps T columns: out [C*k x T], row block j holds x shifted
// by (j - (k-1)/2) * dilation.
Var im2col1d(Graph& g, Var x, int k, int dilation);

// 2-d patch extraction for channel-major maps. x [C x H*W] with spatial
// index h*W + w. Output [C*kh*kw x Ho*Wo] where
// Ho = (H + 2*ph - kh) / sh + 1 and Wo likewise.
Var im2col2d(Graph& g, Var x, int H, int W, int kh, int kw, int sh, int sw,
             int ph, int pw);

// Regroups a channel-major 2-d map [C x H*W] into per-column frames
// [(C*H) x W]: out(c*H + h, w) = x(c, h*W + w).
Var flatten_chw(Graph& g, Var x, int H, int W);

// Additive angular margin: replaces the label entry c of each row by
// c*cos(m) - sqrt(1 - c^2)*sin(m), with c clamped away from +-1.
Var aam_margin(Graph& g, Var cosines, const std::vector<int>& labels,
               double margin);

// Mean cross entropy of row-softmax over logits against integer labels.
Var cross_entropy_mean(Graph& g, Var logits, const std::vector<int>& labels);

}  // namespace nn
}  // namespace svkit

#endif  // SVKIT_NN_OPS_H_
