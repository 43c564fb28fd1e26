// svkit/feat/fbank.h

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

#ifndef SVKIT_FEAT_FBANK_H_
#define SVKIT_FEAT_FBANK_H_

#include <Eigen/Dense>

#include "svkit/common.h"

namespace svkit {

// Frames are rows: T x n_mels.
using FeatureMatrix = Eigen::MatrixXd;

struct FeatureConfig {
  int sample_rate = 16000;
  double win_ms = 25.0;
  double hop_ms = 10.0;
  int n_mels = 80;
  int fft_size = 512;
  double f_min = 20.0;
  double f_max = 7600.0;
  double log_floor = 1e-10;

  int win_samples() const {
    return static_cast<int>(win_ms * sample_rate / 1000.0 + 0.5);
  }
  int hop_samples() const {
    return static_cast<int>(hop_ms * sample_rate / 1000.0 + 0.5);
  }

  // ConfigError unless win_ms > hop_ms > 0, n_mels > 0,
  // fft_size >= win_samples(), 0 <= f_min < f_max <= sample_rate / 2.
  void validate() const;
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters with equally spaced peaks on the mel scale,
// (fft_size / 2 + 1) x n_mels. Weights are computed in the mel domain.
Eigen::MatrixXd mel_filterbank(const FeatureConfig& cfg);

// Log mel-filterbank energies, one row per frame.
// T = 1 + floor((len(w) - win) / hop). Log is log(energy + log_floor).
// InputError if w is shorter than one window or the rate disagrees with cfg.
FeatureMatrix compute_log_mel(const Waveform& w, const FeatureConfig& cfg);

// Subtracts the per-coefficient mean over time from every column.
FeatureMatrix mean_normalize(const FeatureMatrix& f);

}  // namespace svkit

#endif  // SVKIT_FEAT_FBANK_H_
