// svkit/augment/augment.cc

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

#include "svkit/augment/augment.h"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>

#include "svkit/io/wav.h"

namespace svkit {

namespace {

void CheckSnrRange(const char* name, const SnrRange& r) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.hi < r.lo)
    throw ConfigError(std::string(name) + " SNR range is invalid");
}

double MeanSquare(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

double Sinc(double u) {
  if (u == 0.0) return 1.0;
  const double p = M_PI * u;
  return std::sin(p) / p;
}

}  // namespace

void AugmentPolicy::validate() const {
  if (!(p_each >= 0.0) || p_each > 1.0)
    throw ConfigError("p_each must lie in [0, 1]");
  if (specaug.n_time_masks < 0 || specaug.n_freq_masks < 0 ||
      specaug.max_time_mask_frames < 0 || specaug.max_freq_mask_bins < 0 ||
      specaug.max_warp_frames < 0)
    throw ConfigError("specaug extents must be nonnegative");
  CheckSnrRange("noise", noise_snr);
  CheckSnrRange("music", music_snr);
  CheckSnrRange("babble", babble_snr);
  for (double f : speed_factors)
    if (!(f > 0.0)) throw ConfigError("speed factors must be positive");
}

FeatureMatrix spec_augment(const FeatureMatrix& f, const SpecAugPolicy& policy,
                           std::mt19937_64& rng, SpecAugTrace* trace) {
  const int T = static_cast<int>(f.rows());
  const int M = static_cast<int>(f.cols());
  SpecAugTrace tr;
  if (policy.max_warp_frames > 0 && T > 2 * policy.max_warp_frames) {
    std::uniform_int_distribution<int> anchor_d(
        policy.max_warp_frames, T - 1 - policy.max_warp_frames);
    std::uniform_int_distribution<int> shift_d(-policy.max_warp_frames,
                                               policy.max_warp_frames);
    tr.warp = true;
    tr.anchor = anchor_d(rng);
    const int target =
        std::clamp(tr.anchor + shift_d(rng), 1, T - 2);
    tr.shift = target - tr.anchor;
  }
  for (int i = 0; i < policy.n_time_masks; ++i) {
    std::uniform_int_distribution<int> width_d(
        0, std::min(policy.max_time_mask_frames, T));
    const int width = width_d(rng);
    std::uniform_int_distribution<int> start_d(0, T - width);
    tr.time_masks.emplace_back(start_d(rng), width);
  }
  for (int i = 0; i < policy.n_freq_masks; ++i) {
    std::uniform_int_distribution<int> width_d(
        0, std::min(policy.max_freq_mask_bins, M));
    const int width = width_d(rng);
    std::uniform_int_distribution<int> start_d(0, M - width);
    tr.freq_masks.emplace_back(start_d(rng), width);
  }
  if (trace) *trace = tr;
  return apply_spec_augment(f, policy, tr);
}

FeatureMatrix apply_spec_augment(const FeatureMatrix& f,
                                 const SpecAugPolicy& policy,
                                 const SpecAugTrace& trace) {
  const int T = static_cast<int>(f.rows());
  const int M = static_cast<int>(f.cols());
  FeatureMatrix out = f;
  if (trace.warp && trace.shift != 0) {
    const int a = trace.anchor;
    const int b = trace.anchor + trace.shift;
    if (a <= 0 || a >= T - 1 || b <= 0 || b >= T - 1)
      throw InputError("specaug trace: warp anchor out of range");
    // The anchor row moves from a to b; both sides stretch linearly.
    for (int t = 0; t < T; ++t) {
      double src;
      if (t <= b)
        src = static_cast<double>(t) * a / b;
      else
        src = a + static_cast<double>(t - b) * (T - 1 - a) / (T - 1 - b);
      const int i0 = std::min(static_cast<int>(src), T - 2);
      const double frac = src - i0;
      out.row(t) = (1.0 - frac) * f.row(i0) + frac * f.row(i0 + 1);
    }
  }
  const double fill = policy.fill_zero ? 0.0 : out.mean();
  for (const auto& [start, width] : trace.time_masks) {
    if (start < 0 || width < 0 || start + width > T)
      throw InputError("specaug trace: time mask out of range");
    out.middleRows(start, width).setConstant(fill);
  }
  for (const auto& [start, width] : trace.freq_masks) {
    if (start < 0 || width < 0 || start + width > M)
      throw InputError("specaug trace: frequency mask out of range");
    out.middleCols(start, width).setConstant(fill);
  }
  return out;
}

Waveform add_noise_at(const Waveform& w, const Waveform& noise, double snr_db,
                      size_t offset) {
  if (noise.sample_rate != w.sample_rate)
    throw InputError("noise sample rate differs from the signal");
  if (noise.empty()) throw InputError("noise recording is empty");
  if (!std::isfinite(snr_db)) throw InputError("SNR must be finite");
  const size_t n = w.samples.size();
  std::vector<double> seg(n);
  for (size_t i = 0; i < n; ++i)
    seg[i] = noise.samples[(offset + i) % noise.samples.size()];
  const double p_noise = MeanSquare(seg);
  if (p_noise <= 0.0) throw InputError("noise segment has zero power");
  const double p_sig = MeanSquare(w.samples);
  const double g =
      std::sqrt(p_sig / (p_noise * std::pow(10.0, snr_db / 10.0)));
  Waveform out = w;
  for (size_t i = 0; i < n; ++i) out.samples[i] += g * seg[i];
  return out;
}

Waveform add_noise(const Waveform& w, const Waveform& noise, double snr_db,
                   std::mt19937_64& rng) {
  if (noise.empty()) throw InputError("noise recording is empty");
  std::uniform_int_distribution<size_t> offset_d(0, noise.samples.size() - 1);
  return add_noise_at(w, noise, snr_db, offset_d(rng));
}

Waveform add_reverb(const Waveform& w, const Waveform& rir) {
  if (rir.sample_rate != w.sample_rate)
    throw InputError("impulse response sample rate differs from the signal");
  if (rir.empty()) throw InputError("impulse response is empty");
  if (w.empty()) return w;
  const size_t n = w.samples.size();
  size_t fft_n = 1;
  while (fft_n < n + rir.samples.size() - 1) fft_n <<= 1;
  std::vector<double> a(fft_n, 0.0), b(fft_n, 0.0);
  std::copy(w.samples.begin(), w.samples.end(), a.begin());
  std::copy(rir.samples.begin(), rir.samples.end(), b.begin());
  thread_local Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> conv;
  fft.inv(conv, fa);
  Waveform out = w;
  out.samples.assign(conv.begin(), conv.begin() + static_cast<long>(n));
  double peak_in = 0.0, peak_out = 0.0;
  for (double v : w.samples) peak_in = std::max(peak_in, std::abs(v));
  for (double v : out.samples) peak_out = std::max(peak_out, std::abs(v));
  if (peak_in > 0.0 && peak_out > 0.0) {
    const double s = peak_in / peak_out;
    for (double& v : out.samples) v *= s;
  }
  return out;
}

Waveform speed_perturb(const Waveform& w, double factor) {
  if (!(factor > 0.0)) throw InputError("speed factor must be positive");
  if (factor == 1.0) return w;
  const auto in_n = static_cast<long>(w.samples.size());
  const auto out_n = static_cast<long>(
      std::llround(static_cast<double>(in_n) / factor));
  const double cutoff = std::min(1.0, 1.0 / factor);
  constexpr int kHalfTaps = 16;
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(static_cast<size_t>(std::max<long>(out_n, 0)), 0.0);
  for (long i = 0; i < out_n; ++i) {
    const double x = static_cast<double>(i) * factor;
    const long j0 = static_cast<long>(std::floor(x));
    double acc = 0.0;
    for (long j = j0 - kHalfTaps + 1; j <= j0 + kHalfTaps; ++j) {
      if (j < 0 || j >= in_n) continue;
      const double u = x - static_cast<double>(j);
      const double win = 0.5 + 0.5 * std::cos(M_PI * u / kHalfTaps);
      acc += w.samples[static_cast<size_t>(j)] * cutoff *
             Sinc(cutoff * u) * win;
    }
    out.samples[static_cast<size_t>(i)] = acc;
  }
  return out;
}

namespace {

// Waveform-domain part of a recorded trace.
Waveform ApplyWaveformStage(const Waveform& w, const NoiseBank& bank,
                            const AugmentTrace& tr) {
  Waveform cur = w;
  if (tr.speed && tr.speed_factor != 1.0)
    cur = speed_perturb(cur, tr.speed_factor);
  if (tr.env == 1) {
    const std::vector<Waveform>* category = &bank.noise;
    if (tr.noise_category == 1) category = &bank.music;
    if (tr.noise_category == 2) category = &bank.babble;
    if (tr.noise_index >= category->size())
      throw InputError("augment trace: noise index out of range");
    cur = add_noise_at(cur, (*category)[tr.noise_index], tr.snr_db,
                       tr.noise_offset);
  } else if (tr.env == 2) {
    if (tr.rir_index >= bank.rirs.size())
      throw InputError("augment trace: response index out of range");
    cur = add_reverb(cur, bank.rirs[tr.rir_index]);
  } else if (tr.env != 0) {
    throw InputError("augment trace: unknown environment kind");
  }
  return cur;
}

}  // namespace

FeatureMatrix replay_augmentations(const Waveform& w,
                                   const AugmentPolicy& policy,
                                   const NoiseBank& bank,
                                   const FeatureConfig& feat_cfg,
                                   const AugmentTrace& trace) {
  const Waveform cur = ApplyWaveformStage(w, bank, trace);
  FeatureMatrix f = mean_normalize(compute_log_mel(cur, feat_cfg));
  if (trace.specaug) f = apply_spec_augment(f, policy.specaug, trace.sa);
  return f;
}

FeatureMatrix compose_augmentations(const Waveform& w,
                                    const AugmentPolicy& policy,
                                    const NoiseBank& bank,
                                    const FeatureConfig& feat_cfg,
                                    std::mt19937_64& rng,
                                    AugmentTrace* trace) {
  policy.validate();
  AugmentTrace tr;
  std::bernoulli_distribution coin(policy.p_each);
  if (!policy.speed_factors.empty() && coin(rng)) {
    tr.speed = true;
    std::uniform_int_distribution<size_t> pick(0,
                                               policy.speed_factors.size() - 1);
    tr.speed_factor = policy.speed_factors[pick(rng)];
  }
  if (coin(rng)) {
    const bool can_noise = bank.has_additive();
    const bool can_reverb = !bank.rirs.empty();
    int kind = 0;
    if (can_noise && can_reverb)
      kind = std::uniform_int_distribution<int>(1, 2)(rng);
    else if (can_noise)
      kind = 1;
    else if (can_reverb)
      kind = 2;
    if (kind == 1) {
      std::vector<int> categories;
      if (!bank.noise.empty()) categories.push_back(0);
      if (!bank.music.empty()) categories.push_back(1);
      if (!bank.babble.empty()) categories.push_back(2);
      tr.env = 1;
      tr.noise_category = categories[std::uniform_int_distribution<size_t>(
          0, categories.size() - 1)(rng)];
      const std::vector<Waveform>* category = &bank.noise;
      SnrRange range = policy.noise_snr;
      if (tr.noise_category == 1) {
        category = &bank.music;
        range = policy.music_snr;
      } else if (tr.noise_category == 2) {
        category = &bank.babble;
        range = policy.babble_snr;
      }
      tr.noise_index = std::uniform_int_distribution<size_t>(
          0, category->size() - 1)(rng);
      tr.noise_offset = std::uniform_int_distribution<size_t>(
          0, (*category)[tr.noise_index].samples.size() - 1)(rng);
      tr.snr_db =
          std::uniform_real_distribution<double>(range.lo, range.hi)(rng);
    } else if (kind == 2) {
      tr.env = 2;
      tr.rir_index =
          std::uniform_int_distribution<size_t>(0, bank.rirs.size() - 1)(rng);
    }
  }
  const Waveform cur = ApplyWaveformStage(w, bank, tr);
  FeatureMatrix f = mean_normalize(compute_log_mel(cur, feat_cfg));
  if (coin(rng)) {
    tr.specaug = true;
    f = spec_augment(f, policy.specaug, rng, &tr.sa);
  }
  if (trace) *trace = tr;
  return f;
}

NoiseBank NoiseBank::synthetic(uint64_t seed, int sample_rate) {
  NoiseBank bank;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 5 * sample_rate;
  const double dt = 1.0 / sample_rate;

  for (int file = 0; file < 2; ++file) {
    Waveform white;
    white.sample_rate = sample_rate;
    white.samples.resize(n);
    for (double& v : white.samples) v = 0.1 * gauss(rng);
    bank.noise.push_back(std::move(white));
  }

  const double chords[2][3] = {{220.0, 277.2, 329.6}, {246.9, 311.1, 370.0}};
  for (int file = 0; file < 2; ++file) {
    Waveform tone;
    tone.sample_rate = sample_rate;
    tone.samples.resize(n);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const double p0 = phase(rng), p1 = phase(rng), p2 = phase(rng);
    for (int i = 0; i < n; ++i) {
      const double t = i * dt;
      const double am = 0.6 + 0.4 * std::sin(2.0 * M_PI * 0.5 * t);
      tone.samples[i] =
          0.05 * am *
          (std::sin(2.0 * M_PI * chords[file][0] * t + p0) +
           std::sin(2.0 * M_PI * chords[file][1] * t + p1) +
           std::sin(2.0 * M_PI * chords[file][2] * t + p2));
    }
    bank.music.push_back(std::move(tone));
  }

  for (int file = 0; file < 2; ++file) {
    Waveform hum;
    hum.sample_rate = sample_rate;
    hum.samples.assign(n, 0.0);
    for (int voice = 0; voice < 6; ++voice) {
      std::uniform_real_distribution<double> rate_d(2.5, 5.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
      const double syllable = rate_d(rng), ph = phase(rng);
      double lp = 0.0;
      for (int i = 0; i < n; ++i) {
        lp = 0.98 * lp + 0.02 * gauss(rng);
        const double am =
            0.5 + 0.5 * std::sin(2.0 * M_PI * syllable * i * dt + ph);
        hum.samples[i] += 0.15 * am * lp;
      }
    }
    bank.babble.push_back(std::move(hum));
  }

  const double decays[3] = {0.03, 0.06, 0.12};
  for (double tau : decays) {
    Waveform rir;
    rir.sample_rate = sample_rate;
    rir.samples.resize(sample_rate / 4, 0.0);
    rir.samples[0] = 1.0;
    for (size_t i = 1; i < rir.samples.size(); ++i)
      rir.samples[i] = 0.05 * gauss(rng) *
                       std::exp(-static_cast<double>(i) * dt / tau);
    bank.rirs.push_back(std::move(rir));
  }
  return bank;
}

namespace {

std::vector<Waveform> LoadWavDir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".wav")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Waveform> wavs;
  wavs.reserve(files.size());
  for (const auto& p : files) wavs.push_back(read_wav(p.string()));
  return wavs;
}

}  // namespace

NoiseBank NoiseBank::from_dirs(const std::string& noise_dir,
                               const std::string& rir_dir) {
  NoiseBank bank;
  namespace fs = std::filesystem;
  if (!noise_dir.empty()) {
    const fs::path root(noise_dir);
    if (!fs::is_directory(root))
      throw InputError("noise directory not found: " + noise_dir);
    if (fs::is_directory(root / "noise") || fs::is_directory(root / "music") ||
        fs::is_directory(root / "babble")) {
      if (fs::is_directory(root / "noise"))
        bank.noise = LoadWavDir(root / "noise");
      if (fs::is_directory(root / "music"))
        bank.music = LoadWavDir(root / "music");
      if (fs::is_directory(root / "babble"))
        bank.babble = LoadWavDir(root / "babble");
    } else {
      bank.noise = LoadWavDir(root);
    }
  }
  if (!rir_dir.empty()) {
    if (!std::filesystem::is_directory(rir_dir))
      throw InputError("response directory not found: " + rir_dir);
    bank.rirs = LoadWavDir(rir_dir);
  }
  return bank;
}

}  // namespace svkit
