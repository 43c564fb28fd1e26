// svkit/io/manifest.cc

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

#include "svkit/io/manifest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace svkit {

namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool ParseDouble(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool IsBlankOrComment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::vector<UtteranceRecord> parse_manifest(const std::string& text) {
  std::vector<UtteranceRecord> records;
  std::unordered_set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlankOrComment(line)) continue;
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() != 4)
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": expected 4 tab-separated fields, got " +
                        std::to_string(f.size()));
    UtteranceRecord rec;
    rec.utt_id = f[0];
    rec.speaker_id = f[1];
    rec.path = f[2];
    if (rec.utt_id.empty())
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": empty utt_id");
    if (rec.speaker_id.empty())
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": empty speaker_id");
    if (!ParseDouble(f[3], &rec.duration_s) || !std::isfinite(rec.duration_s))
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": malformed duration '" + f[3] + "'");
    if (rec.duration_s <= 0.0)
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": duration must be positive, got '" + f[3] + "'");
    if (!seen.insert(rec.utt_id).second)
      throw FormatError("manifest line " + std::to_string(lineno) +
                        ": duplicate utt_id '" + rec.utt_id + "'");
    records.push_back(std::move(rec));
  }
  return records;
}

std::string write_manifest(const std::vector<UtteranceRecord>& records) {
  std::ostringstream out;
  char buf[64];
  for (const UtteranceRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%.3f", r.duration_s);
    out << r.utt_id << '\t' << r.speaker_id << '\t' << r.path << '\t' << buf
        << '\n';
  }
  return out.str();
}

std::vector<Trial> parse_trials(const std::string& text) {
  std::vector<Trial> trials;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlankOrComment(line)) continue;
    std::vector<std::string> f = SplitWhitespace(line);
    if (f.size() != 2 && f.size() != 3)
      throw FormatError("trials line " + std::to_string(lineno) +
                        ": expected 2 or 3 fields, got " +
                        std::to_string(f.size()));
    Trial t;
    t.enroll_id = f[0];
    t.test_utt_id = f[1];
    if (f.size() == 3) {
      if (f[2] == "target") {
        t.label = TrialLabel::kTarget;
      } else if (f[2] == "nontarget") {
        t.label = TrialLabel::kNontarget;
      } else {
        throw FormatError("trials line " + std::to_string(lineno) +
                          ": label must be 'target' or 'nontarget', got '" +
                          f[2] + "'");
      }
    }
    trials.push_back(std::move(t));
  }
  return trials;
}

std::string write_trials(const std::vector<Trial>& trials) {
  std::ostringstream out;
  for (const Trial& t : trials) {
    out << t.enroll_id << ' ' << t.test_utt_id;
    if (t.label.has_value())
      out << ' ' << (*t.label == TrialLabel::kTarget ? "target" : "nontarget");
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FormatError("write failed for '" + path + "'");
}

std::vector<UtteranceRecord> load_manifest(const std::string& path) {
  try {
    return parse_manifest(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::vector<Trial> load_trials(const std::string& path) {
  try {
    return parse_trials(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace svkit
