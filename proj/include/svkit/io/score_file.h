// svkit/io/score_file.h

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

#ifndef SVKIT_IO_SCORE_FILE_H_
#define SVKIT_IO_SCORE_FILE_H_

#include <string>
#include <vector>

#include "svkit/common.h"

namespace svkit {

struct ScoreRow {
  std::string enroll_id;
  std::string test_utt_id;
  double score = 0.0;

  bool operator==(const ScoreRow&) const = default;
};

// Text format, one row per line: "<enroll_id> <test_utt_id> <score>" with
// the score printed as %.6f. (enroll_id, test_utt_id) pairs are unique and
// scores are finite.
void write_scores(const std::vector<ScoreRow>& rows, const std::string& path);

// FormatError names the offending line on malformed rows, non-finite
// scores, or duplicate trial keys.
std::vector<ScoreRow> parse_scores(const std::string& text);
std::vector<ScoreRow> load_scores(const std::string& path);

}  // namespace svkit

#endif  // SVKIT_IO_SCORE_FILE_H_
