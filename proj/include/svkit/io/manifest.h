// svkit/io/manifest.h

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

#ifndef SVKIT_IO_MANIFEST_H_
#define SVKIT_IO_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

#include "svkit/common.h"

namespace svkit {

// One audio recording. utt_id is unique within a manifest.
struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  std::string path;
  double duration_s = 0.0;
};

enum class TrialLabel { kTarget, kNontarget };

// One (enrollment speaker, test utterance) pair. The label is present for
// development trials and may be absent for blind evaluation.
struct Trial {
  std::string enroll_id;
  std::string test_utt_id;
  std::optional<TrialLabel> label;
};

// Manifest lines are `utt_id<TAB>speaker_id<TAB>path<TAB>duration_s`.
// `#`-prefixed lines and blank lines are skipped. Duplicate utt_ids,
// malformed durations, or a wrong field count raise FormatError naming
// the offending line.
std::vector<UtteranceRecord> parse_manifest(const std::string& text);

std::string write_manifest(const std::vector<UtteranceRecord>& records);

// Trial lines are `enroll_id test_utt_id [target|nontarget]`, whitespace
// separated. Two-column lines yield an absent label; any other third token
// raises FormatError.
std::vector<Trial> parse_trials(const std::string& text);

std::string write_trials(const std::vector<Trial>& trials);

// File wrappers around the text parsers.
std::vector<UtteranceRecord> load_manifest(const std::string& path);
std::vector<Trial> load_trials(const std::string& path);

// Reads a whole file into a string (FormatError if unreadable).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace svkit

#endif  // SVKIT_IO_MANIFEST_H_
