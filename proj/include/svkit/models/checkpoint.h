// svkit/models/checkpoint.h

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

#ifndef SVKIT_MODELS_CHECKPOINT_H_
#define SVKIT_MODELS_CHECKPOINT_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "svkit/models/model.h"

namespace svkit {

// Model state restored from disk: the rebuilt encoder, the training step
// the file was written at, and the speaker labels backing the head rows
// (empty for a headless model).
struct LoadedModel {
  std::unique_ptr<SpeakerEncoder> model;
  uint32_t step = 0;
  std::vector<std::string> speakers;
};

// Versioned binary format: magic "SVKCKPT1", format version, step counter,
// the serialized ModelConfig, the speaker list, then every named tensor
// (parameters and buffers) as little-endian f64. speakers must have exactly
// cfg.n_speakers entries.
void write_checkpoint(std::ostream& out, const SpeakerEncoder& model,
                      uint32_t step, const std::vector<std::string>& speakers);
LoadedModel read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const SpeakerEncoder& model,
                     uint32_t step, const std::vector<std::string>& speakers);
LoadedModel load_checkpoint(const std::string& path);

}  // namespace svkit

#endif  // SVKIT_MODELS_CHECKPOINT_H_
