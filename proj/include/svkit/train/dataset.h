// svkit/train/dataset.h

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

#ifndef SVKIT_TRAIN_DATASET_H_
#define SVKIT_TRAIN_DATASET_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "svkit/common.h"

namespace svkit {

struct TrainUtterance {
  std::string utt_id;
  std::string speaker_id;
  Waveform wav;
};

// In-memory training corpus grouped by speaker. Batches are drawn
// speaker-balanced: global slot k visits speaker k mod S round-robin and
// walks that speaker's utterances in a seed-shuffled cyclic order, so every
// window of S consecutive slots covers each speaker exactly once.
class TrainSet {
 public:
  // InputError on an empty corpus, an empty recording, or a blank id.
  TrainSet(std::vector<TrainUtterance> utts, uint64_t seed);

  int n_speakers() const { return static_cast<int>(speakers_.size()); }
  // Sorted; position defines the training label.
  const std::vector<std::string>& speakers() const { return speakers_; }
  size_t size() const { return utts_.size(); }
  const std::vector<TrainUtterance>& utterances() const { return utts_; }

  struct Slot {
    const TrainUtterance* utt;
    int label;
  };
  Slot slot(long k) const;

 private:
  std::vector<TrainUtterance> utts_;
  std::vector<std::string> speakers_;
  std::vector<std::vector<size_t>> order_;  // per speaker, shuffled indices
};

// Random contiguous crop of n samples (uniform start); recordings shorter
// than n are tiled cyclically. ConfigError when n < 1.
Waveform crop_or_pad(const Waveform& w, long n, std::mt19937_64& rng);

// Independent rng stream for (seed, a, b); identical arguments always
// produce the identical stream.
std::mt19937_64 derive_rng(uint64_t seed, uint64_t a, uint64_t b);

}  // namespace svkit

#endif  // SVKIT_TRAIN_DATASET_H_
