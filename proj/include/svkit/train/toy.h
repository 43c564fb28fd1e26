// svkit/train/toy.h

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

#ifndef SVKIT_TRAIN_TOY_H_
#define SVKIT_TRAIN_TOY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "svkit/train/dataset.h"

namespace svkit {

struct ToyCorpusConfig {
  int n_speakers = 10;
  int utts_per_speaker = 20;
  double utt_seconds = 3.0;
  int sample_rate = 16000;
  uint64_t seed = 7;
  // "base" or "shifted"; the shifted profile relocates every resonance and
  // the pitch register and darkens the spectrum, giving a second acoustic
  // domain over a disjoint speaker set.
  std::string profile = "base";

  // ConfigError on nonpositive counts, durations below half a second, or
  // an unknown profile.
  void validate() const;
};

// Deterministic synthetic speakers: a glottal-style pulse train with
// vibrato and per-utterance pitch jitter, shaped by two per-speaker
// resonators. Identical configs produce bit-identical corpora.
std::vector<TrainUtterance> make_toy_corpus(const ToyCorpusConfig& cfg);

}  // namespace svkit

#endif  // SVKIT_TRAIN_TOY_H_
