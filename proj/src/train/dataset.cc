// svkit/train/dataset.cc

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

#include "svkit/train/dataset.h"

#include <algorithm>
#include <map>

namespace svkit {

namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 derive_rng(uint64_t seed, uint64_t a, uint64_t b) {
  return std::mt19937_64(SplitMix(SplitMix(SplitMix(seed) ^ a) ^ b));
}

TrainSet::TrainSet(std::vector<TrainUtterance> utts, uint64_t seed)
    : utts_(std::move(utts)) {
  if (utts_.empty()) throw InputError("training set is empty");
  std::map<std::string, std::vector<size_t>> by_speaker;
  for (size_t i = 0; i < utts_.size(); ++i) {
    const TrainUtterance& u = utts_[i];
    if (u.speaker_id.empty() || u.utt_id.empty())
      throw InputError("training utterance with a blank id");
    if (u.wav.empty())
      throw InputError("training utterance " + u.utt_id + " is empty");
    by_speaker[u.speaker_id].push_back(i);
  }
  for (auto& [spk, idx] : by_speaker) {
    auto rng = derive_rng(seed, speakers_.size(), 0x5eedfeedULL);
    std::shuffle(idx.begin(), idx.end(), rng);
    speakers_.push_back(spk);
    order_.push_back(std::move(idx));
  }
}

TrainSet::Slot TrainSet::slot(long k) const {
  if (k < 0) throw InputError("batch slot must be nonnegative");
  const auto s = static_cast<size_t>(k) % speakers_.size();
  const std::vector<size_t>& ring = order_[s];
  const size_t within =
      (static_cast<size_t>(k) / speakers_.size()) % ring.size();
  return {&utts_[ring[within]], static_cast<int>(s)};
}

Waveform crop_or_pad(const Waveform& w, long n, std::mt19937_64& rng) {
  if (n < 1) throw ConfigError("crop length must be at least one sample");
  if (w.empty()) throw InputError("cannot crop an empty recording");
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(static_cast<size_t>(n));
  const auto len = static_cast<long>(w.samples.size());
  if (len >= n) {
    std::uniform_int_distribution<long> start_d(0, len - n);
    const long start = start_d(rng);
    std::copy(w.samples.begin() + start, w.samples.begin() + start + n,
              out.samples.begin());
  } else {
    for (long i = 0; i < n; ++i)
      out.samples[static_cast<size_t>(i)] =
          w.samples[static_cast<size_t>(i % len)];
  }
  return out;
}

}  // namespace svkit
