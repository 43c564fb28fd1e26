// src/feat/fbank.cc

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

#include "svkit/feat/fbank.h"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace svkit {

void FeatureConfig::validate() const {
  if (sample_rate <= 0)
    throw ConfigError("feat.sample_rate must be positive");
  if (!(hop_ms > 0.0) || !(win_ms > hop_ms))
    throw ConfigError("feature windows require win_ms > hop_ms > 0");
  if (n_mels <= 0) throw ConfigError("feat.n_mels must be positive");
  if (fft_size < win_samples())
    throw ConfigError("feat.fft_size " + std::to_string(fft_size) +
                      " is smaller than the window of " +
                      std::to_string(win_samples()) + " samples");
  if (!(f_min >= 0.0) || !(f_max > f_min) || f_max > sample_rate / 2.0)
    throw ConfigError("feature band requires 0 <= f_min < f_max <= rate/2");
  if (!(log_floor > 0.0)) throw ConfigError("feat log floor must be > 0");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

Eigen::MatrixXd mel_filterbank(const FeatureConfig& cfg) {
  cfg.validate();
  const int n_bins = cfg.fft_size / 2 + 1;
  const double mel_lo = hz_to_mel(cfg.f_min);
  const double mel_hi = hz_to_mel(cfg.f_max);
  std::vector<double> mel_pts(cfg.n_mels + 2);
  for (int i = 0; i < cfg.n_mels + 2; ++i)
    mel_pts[i] = mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mels + 1);

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(n_bins, cfg.n_mels);
  for (int k = 0; k < n_bins; ++k) {
    const double mel_k =
        hz_to_mel(static_cast<double>(k) * cfg.sample_rate / cfg.fft_size);
    for (int m = 0; m < cfg.n_mels; ++m) {
      const double left = mel_pts[m], center = mel_pts[m + 1],
                   right = mel_pts[m + 2];
      if (mel_k <= left || mel_k >= right) continue;
      fb(k, m) = mel_k <= center ? (mel_k - left) / (center - left)
                                 : (right - mel_k) / (right - center);
    }
  }
  return fb;
}

FeatureMatrix compute_log_mel(const Waveform& w, const FeatureConfig& cfg) {
  cfg.validate();
  if (w.sample_rate != cfg.sample_rate)
    throw InputError("waveform rate " + std::to_string(w.sample_rate) +
                     " does not match feature rate " +
                     std::to_string(cfg.sample_rate));
  const int win = cfg.win_samples();
  const int hop = cfg.hop_samples();
  if (static_cast<int>(w.size()) < win)
    throw InputError("waveform of " + std::to_string(w.size()) +
                     " samples is shorter than one " + std::to_string(win) +
                     " sample window");
  const int n_frames = 1 + (static_cast<int>(w.size()) - win) / hop;
  const int n_bins = cfg.fft_size / 2 + 1;

  Eigen::VectorXd window(win);
  for (int n = 0; n < win; ++n)
    window(n) = 0.54 - 0.46 * std::cos(2.0 * M_PI * n / (win - 1));

  const Eigen::MatrixXd fb = mel_filterbank(cfg);

  thread_local Eigen::FFT<double> fft;
  std::vector<double> buf(cfg.fft_size);
  std::vector<std::complex<double>> spec;

  FeatureMatrix out(n_frames, cfg.n_mels);
  for (int t = 0; t < n_frames; ++t) {
    const int off = t * hop;
    for (int n = 0; n < win; ++n) buf[n] = w.samples[off + n] * window(n);
    std::fill(buf.begin() + win, buf.end(), 0.0);
    fft.fwd(spec, buf);
    Eigen::RowVectorXd power(n_bins);
    for (int k = 0; k < n_bins; ++k) power(k) = std::norm(spec[k]);
    out.row(t) = ((power * fb).array() + cfg.log_floor).log();
  }
  if (!out.allFinite()) throw InputError("non-finite feature values");
  return out;
}

FeatureMatrix mean_normalize(const FeatureMatrix& f) {
  if (f.rows() < 1) throw InputError("cannot normalize an empty feature matrix");
  return f.rowwise() - f.colwise().mean();
}

}  // namespace svkit
