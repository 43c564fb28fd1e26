// svkit/augment/augment.h

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

#ifndef SVKIT_AUGMENT_AUGMENT_H_
#define SVKIT_AUGMENT_AUGMENT_H_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "svkit/common.h"
#include "svkit/feat/fbank.h"

namespace svkit {

struct SpecAugPolicy {
  int n_time_masks = 2;
  int max_time_mask_frames = 10;
  int n_freq_masks = 2;
  int max_freq_mask_bins = 8;
  int max_warp_frames = 5;
  bool fill_zero = false;  // default fill is the matrix mean
};

struct SnrRange {
  double lo = 0.0;
  double hi = 15.0;
};

struct AugmentPolicy {
  double p_each = 0.6;
  SpecAugPolicy specaug;
  SnrRange noise_snr{0.0, 15.0};
  SnrRange music_snr{5.0, 15.0};
  SnrRange babble_snr{13.0, 20.0};
  std::vector<double> speed_factors = {0.9, 1.0, 1.1};

  // ConfigError on probabilities outside [0,1], negative mask extents,
  // inverted or non-finite SNR ranges, or nonpositive speed factors.
  void validate() const;
};

// In-memory corpora of additive corruptions and room responses. Category
// vectors may be empty; an empty category is never drawn.
struct NoiseBank {
  std::vector<Waveform> noise;
  std::vector<Waveform> music;
  std::vector<Waveform> babble;
  std::vector<Waveform> rirs;

  bool has_additive() const {
    return !noise.empty() || !music.empty() || !babble.empty();
  }

  // Bundled generator: white noise, tonal beds, babble-like hum, and
  // exponentially decaying synthetic room responses. Deterministic in the
  // seed, so the test suite needs no external corpora.
  static NoiseBank synthetic(uint64_t seed, int sample_rate = 16000);

  // Loads every *.wav under noise_dir (subdirectories noise/, music/,
  // babble/ when present, otherwise all files count as noise) and rir_dir.
  // Either directory may be empty ("").
  static NoiseBank from_dirs(const std::string& noise_dir,
                             const std::string& rir_dir);
};

// The random decisions of one spec_augment draw, reusable for replay.
struct SpecAugTrace {
  bool warp = false;
  int anchor = 0;
  int shift = 0;
  std::vector<std::pair<int, int>> time_masks;  // (start, width) over frames
  std::vector<std::pair<int, int>> freq_masks;  // (start, width) over bins
};

// Time warp around a random interior anchor, then time and frequency
// masks filled with the matrix mean (or zero). Shape is preserved. Inputs
// too short for the warp (T <= 2*max_warp_frames) skip it silently.
FeatureMatrix spec_augment(const FeatureMatrix& f, const SpecAugPolicy& policy,
                           std::mt19937_64& rng,
                           SpecAugTrace* trace = nullptr);

// Applies previously drawn decisions.
FeatureMatrix apply_spec_augment(const FeatureMatrix& f,
                                 const SpecAugPolicy& policy,
                                 const SpecAugTrace& trace);

// w + g * noise, g chosen so the speech-to-noise power ratio matches
// snr_db. The noise is read circularly from `offset`; add_noise draws the
// offset. InputError on rate mismatch or zero-power noise.
Waveform add_noise(const Waveform& w, const Waveform& noise, double snr_db,
                   std::mt19937_64& rng);
Waveform add_noise_at(const Waveform& w, const Waveform& noise, double snr_db,
                      size_t offset);

// Full convolution with the response, truncated to len(w) and rescaled to
// the input's peak amplitude. InputError on an empty response or rate
// mismatch.
Waveform add_reverb(const Waveform& w, const Waveform& rir);

// Windowed-sinc resampling: output length round(len(w)/factor), pitch and
// tempo scaled together. factor 1 returns the input unchanged.
Waveform speed_perturb(const Waveform& w, double factor);

// The decision trace of one composed draw.
struct AugmentTrace {
  bool speed = false;
  double speed_factor = 1.0;
  int env = 0;  // 0 none, 1 additive noise, 2 reverb
  int noise_category = 0;  // 0 noise, 1 music, 2 babble
  size_t noise_index = 0;
  size_t noise_offset = 0;
  double snr_db = 0.0;
  size_t rir_index = 0;
  bool specaug = false;
  SpecAugTrace sa;
};

// Optional speed perturb, then at most one of {additive noise, reverb},
// then log-mel features, mean normalization, and optional SpecAug. With
// all probabilities zero this is exactly the clean feature path.
FeatureMatrix compose_augmentations(const Waveform& w,
                                    const AugmentPolicy& policy,
                                    const NoiseBank& bank,
                                    const FeatureConfig& feat_cfg,
                                    std::mt19937_64& rng,
                                    AugmentTrace* trace = nullptr);

// Re-applies a recorded decision trace.
FeatureMatrix replay_augmentations(const Waveform& w,
                                   const AugmentPolicy& policy,
                                   const NoiseBank& bank,
                                   const FeatureConfig& feat_cfg,
                                   const AugmentTrace& trace);

}  // namespace svkit

#endif  // SVKIT_AUGMENT_AUGMENT_H_
