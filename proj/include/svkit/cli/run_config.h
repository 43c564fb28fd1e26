// svkit/cli/run_config.h

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

#ifndef SVKIT_CLI_RUN_CONFIG_H_
#define SVKIT_CLI_RUN_CONFIG_H_

#include <string>

#include "svkit/feat/fbank.h"
#include "svkit/models/model.h"
#include "svkit/train/trainer.h"
#include "svkit/train/toy.h"

namespace svkit {

// Flat typed key-value settings for every pipeline stage. One `seed` key
// drives model initialization, batching, cropping, augmentation, and the
// toy corpus. Unknown keys are rejected; to_text() emits every key so a
// run's resolved configuration can be logged next to its artifacts.
struct RunConfig {
  uint64_t seed = 1;
  FeatureConfig feat;
  ModelConfig model;   // n_speakers is derived from the data, not a key
  TrainConfig train;   // seed is mirrored from the top-level key
  std::string finetune_mode = "weight_transfer";
  double lambda_wt = 1.0;
  double aam_scale = 30.0;
  double aam_margin = 0.2;
  double augment_p = 0.0;
  std::string noise_dir;
  std::string rir_dir;
  double enroll_min_s = 10.0;
  double enroll_max_s = 60.0;
  int toy_speakers = 10;
  int toy_utts = 20;
  double toy_seconds = 3.0;
  std::string toy_profile = "base";

  // Typed assignment of one key. ConfigError on an unknown key or an
  // unparseable value.
  void set(const std::string& key, const std::string& value);

  // "key = value" lines; '#' comments and blank lines are skipped.
  // ConfigError names a malformed line.
  static RunConfig from_text(const std::string& text);

  // Every key in a fixed order; from_text(to_text()) round-trips exactly.
  std::string to_text() const;

  // Cross-field checks of every embedded config.
  void validate() const;
};

}  // namespace svkit

#endif  // SVKIT_CLI_RUN_CONFIG_H_
