// svkit/io/wav.cc

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

#include "svkit/io/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace svkit {

namespace {

uint32_t ReadU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::string* s, uint32_t v) {
  for (int i = 0; i < 4; i++) s->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string* s, uint16_t v) {
  s->push_back(static_cast<char>(v & 0xff));
  s->push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("wav: cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  size_t n = bytes.size();
  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
    throw FormatError("wav: '" + path + "' is not a RIFF/WAVE file");

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0, format = 0;
  uint32_t sample_rate = 0;
  size_t data_off = 0, data_len = 0;

  size_t off = 12;
  while (off + 8 <= n) {
    uint32_t chunk_len = ReadU32(p + off + 4);
    const char* chunk_id = reinterpret_cast<const char*>(p + off);
    size_t body = off + 8;
    if (body + chunk_len > n)
      throw FormatError("wav: '" + path + "' truncated chunk at byte " +
                        std::to_string(off));
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw FormatError("wav: '" + path + "' short fmt chunk");
      format = ReadU16(p + body);
      channels = ReadU16(p + body + 2);
      sample_rate = ReadU32(p + body + 4);
      bits = ReadU16(p + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      data_off = body;
      data_len = chunk_len;
    }
    off = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }
  if (!have_fmt || data_off == 0)
    throw FormatError("wav: '" + path + "' missing fmt or data chunk");
  if (format != 1 || bits != 16)
    throw FormatError("wav: '" + path + "' is not 16-bit PCM");
  if (channels != 1)
    throw FormatError("wav: '" + path + "' has " + std::to_string(channels) +
                      " channels, expected mono");

  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  size_t n_samples = data_len / 2;
  w.samples.resize(n_samples);
  const unsigned char* d = p + data_off;
  for (size_t i = 0; i < n_samples; i++) {
    int16_t v = static_cast<int16_t>(d[2 * i] | (d[2 * i + 1] << 8));
    w.samples[i] = static_cast<double>(v) / 32768.0;
  }
  return w;
}

void write_wav(const std::string& path, const Waveform& w) {
  std::string body;
  body.reserve(44 + 2 * w.samples.size());
  uint32_t data_len = static_cast<uint32_t>(2 * w.samples.size());
  body += "RIFF";
  PutU32(&body, 36 + data_len);
  body += "WAVE";
  body += "fmt ";
  PutU32(&body, 16);
  PutU16(&body, 1);  // PCM
  PutU16(&body, 1);  // mono
  PutU32(&body, static_cast<uint32_t>(w.sample_rate));
  PutU32(&body, static_cast<uint32_t>(w.sample_rate) * 2);
  PutU16(&body, 2);
  PutU16(&body, 16);
  body += "data";
  PutU32(&body, data_len);
  for (double s : w.samples) {
    double c = std::clamp(s, -1.0, 32767.0 / 32768.0);
    int16_t v = static_cast<int16_t>(std::lrint(c * 32768.0));
    PutU16(&body, static_cast<uint16_t>(v));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("wav: cannot write '" + path + "'");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw FormatError("wav: write failed for '" + path + "'");
}

}  // namespace svkit
