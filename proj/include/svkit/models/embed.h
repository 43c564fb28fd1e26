// svkit/models/embed.h

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

#ifndef SVKIT_MODELS_EMBED_H_
#define SVKIT_MODELS_EMBED_H_

#include "svkit/feat/fbank.h"
#include "svkit/models/model.h"

namespace svkit {

// Eval-mode embedding of one full recording. InputError when the recording
// yields fewer than min_frames() feature frames.
Eigen::VectorXd embed_utterance(SpeakerEncoder& model, const Waveform& w,
                                const FeatureConfig& feat);

}  // namespace svkit

#endif  // SVKIT_MODELS_EMBED_H_
