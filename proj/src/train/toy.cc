// svkit/train/toy.cc

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

#include "svkit/train/toy.h"

#include <cmath>
#include <cstdio>

namespace svkit {

namespace {

// Two-pole resonator, bounded gain at the center frequency.
class Resonator {
 public:
  Resonator(double hz, double bw_hz, int rate) {
    const double r = std::exp(-M_PI * bw_hz / rate);
    a1_ = -2.0 * r * std::cos(2.0 * M_PI * hz / rate);
    a2_ = r * r;
    gain_ = (1.0 - r) * std::sqrt(1.0 + a2_);
  }
  double tick(double x) {
    const double y = gain_ * x - a1_ * y1_ - a2_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a1_, a2_, gain_;
  double y1_ = 0.0, y2_ = 0.0;
};

struct VoiceLayout {
  double f0, f1, bw1, f2, bw2;
  bool dark;  // extra lowpass coloring
};

VoiceLayout SpeakerLayout(const std::string& profile, int s) {
  if (profile == "base")
    return {95.0 + 13.0 * s, 380.0 + 85.0 * s, 90.0,
            1250.0 + 140.0 * s, 150.0, false};
  return {165.0 + 11.0 * s, 620.0 + 62.0 * s, 120.0,
          2450.0 + 95.0 * s, 200.0, true};
}

std::string SpeakerId(const std::string& profile, int s) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%02d",
                profile == "base" ? "s" : "t", s);
  return buf;
}

}  // namespace

void ToyCorpusConfig::validate() const {
  if (n_speakers < 1 || utts_per_speaker < 1)
    throw ConfigError("toy corpus needs positive speaker and utterance counts");
  if (!(utt_seconds >= 0.5))
    throw ConfigError("toy utterances must be at least half a second");
  if (sample_rate < 8000) throw ConfigError("toy sample rate is too low");
  if (profile != "base" && profile != "shifted")
    throw ConfigError("toy profile must be base or shifted, got " + profile);
}

std::vector<TrainUtterance> make_toy_corpus(const ToyCorpusConfig& cfg) {
  cfg.validate();
  const uint64_t domain = cfg.profile == "base" ? 0xba5eULL : 0x51f7ULL;
  std::vector<TrainUtterance> out;
  out.reserve(static_cast<size_t>(cfg.n_speakers) * cfg.utts_per_speaker);
  const auto n = static_cast<long>(cfg.utt_seconds * cfg.sample_rate);
  const double dt = 1.0 / cfg.sample_rate;

  for (int s = 0; s < cfg.n_speakers; ++s) {
    const VoiceLayout voice = SpeakerLayout(cfg.profile, s);
    const std::string spk = SpeakerId(cfg.profile, s);
    for (int u = 0; u < cfg.utts_per_speaker; ++u) {
      std::mt19937_64 rng =
          derive_rng(cfg.seed ^ domain, static_cast<uint64_t>(s),
                     static_cast<uint64_t>(u));
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::uniform_real_distribution<double> unit(0.0, 1.0);

      const double f0 = voice.f0 * std::exp(0.03 * gauss(rng));
      const double vib_hz = 4.0 + 1.5 * unit(rng);
      const double vib_phase = 2.0 * M_PI * unit(rng);
      const double am_hz = 1.5 + 2.0 * unit(rng);
      const double am_phase = 2.0 * M_PI * unit(rng);

      Resonator r1(voice.f1, voice.bw1, cfg.sample_rate);
      Resonator r2(voice.f2, voice.bw2, cfg.sample_rate);
      std::vector<double> samples(static_cast<size_t>(n));
      double phase = 1.0;  // emit a pulse on the first sample
      double lp = 0.0;
      double peak = 0.0;
      for (long i = 0; i < n; ++i) {
        const double t = i * dt;
        const double inst_f0 =
            f0 * (1.0 + 0.015 * std::sin(2.0 * M_PI * vib_hz * t + vib_phase));
        phase += inst_f0 * dt;
        double pulse = 0.0;
        if (phase >= 1.0) {
          phase -= 1.0;
          pulse = 1.0 + 0.1 * gauss(rng);
        }
        const double excitation = pulse + 0.02 * gauss(rng);
        double v = 0.9 * r1.tick(excitation) + 0.6 * r2.tick(excitation);
        if (voice.dark) {
          lp = 0.55 * lp + 0.45 * v;
          v = lp + 0.008 * gauss(rng);
        }
        const double env =
            std::min(1.0, t / 0.06) *
            (0.75 + 0.25 * std::sin(2.0 * M_PI * am_hz * t + am_phase));
        const double y = env * v;
        samples[static_cast<size_t>(i)] = y;
        peak = std::max(peak, std::abs(y));
      }
      if (peak > 0.0)
        for (double& v : samples) v *= 0.3 / peak;

      TrainUtterance item;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s_u%02d", spk.c_str(), u);
      item.utt_id = buf;
      item.speaker_id = spk;
      item.wav.sample_rate = cfg.sample_rate;
      item.wav.samples = std::move(samples);
      out.push_back(std::move(item));
    }
  }
  return out;
}

}  // namespace svkit
