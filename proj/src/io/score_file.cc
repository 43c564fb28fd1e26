// src/io/score_file.cc

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

#include "svkit/io/score_file.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "svkit/io/manifest.h"

namespace svkit {

void write_scores(const std::vector<ScoreRow>& rows, const std::string& path) {
  std::set<std::pair<std::string, std::string>> seen;
  std::ostringstream out;
  char buf[64];
  for (const auto& row : rows) {
    if (!std::isfinite(row.score))
      throw InputError("non-finite score for trial (" + row.enroll_id + ", " +
                       row.test_utt_id + ")");
    if (!seen.emplace(row.enroll_id, row.test_utt_id).second)
      throw InputError("duplicate trial (" + row.enroll_id + ", " +
                       row.test_utt_id + ") in score rows");
    std::snprintf(buf, sizeof(buf), "%.6f", row.score);
    out << row.enroll_id << ' ' << row.test_utt_id << ' ' << buf << '\n';
  }
  write_text_file(path, out.str());
}

std::vector<ScoreRow> parse_scores(const std::string& text) {
  std::vector<ScoreRow> rows;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    ScoreRow row;
    std::string score_str, extra;
    if (!(fields >> row.enroll_id >> row.test_utt_id >> score_str) ||
        (fields >> extra))
      throw FormatError("score line " + std::to_string(line_no) +
                        ": expected 'enroll test score', got '" + line + "'");
    size_t pos = 0;
    try {
      row.score = std::stod(score_str, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != score_str.size() || !std::isfinite(row.score))
      throw FormatError("score line " + std::to_string(line_no) +
                        ": bad score '" + score_str + "'");
    if (!seen.emplace(row.enroll_id, row.test_utt_id).second)
      throw FormatError("score line " + std::to_string(line_no) +
                        ": duplicate trial (" + row.enroll_id + ", " +
                        row.test_utt_id + ")");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScoreRow> load_scores(const std::string& path) {
  try {
    return parse_scores(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace svkit
