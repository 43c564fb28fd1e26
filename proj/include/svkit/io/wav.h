// svkit/io/wav.h

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

#ifndef SVKIT_IO_WAV_H_
#define SVKIT_IO_WAV_H_

#include <string>

#include "svkit/common.h"

namespace svkit {

// Reads a mono 16-bit PCM RIFF/WAV file. Unknown chunks are skipped; any
// other encoding, channel count, or a truncated stream raises FormatError.
Waveform read_wav(const std::string& path);

// Writes mono 16-bit PCM. Samples are clipped to [-1, 1).
void write_wav(const std::string& path, const Waveform& w);

}  // namespace svkit

#endif  // SVKIT_IO_WAV_H_
