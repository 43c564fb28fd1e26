// svkit/common.h

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

#ifndef SVKIT_COMMON_H_
#define SVKIT_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace svkit {

// An on-disk artifact (manifest, trial list, embedding store, score file,
// checkpoint, WAV) violates its format contract. Messages locate the fault
// (line number or byte position) whenever possible.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation received data outside its contract (wrong shape, empty input,
// zero vector, out-of-range label, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration violates an invariant (bad hyperparameter, unknown key,
// architecture mismatch, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mono audio: the raw unit of ingestion and waveform augmentation.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  int64_t size() const { return static_cast<int64_t>(samples.size()); }
  bool empty() const { return samples.empty(); }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

}  // namespace svkit

#endif  // SVKIT_COMMON_H_
