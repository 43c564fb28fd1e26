// svkit/models/checkpoint.cc

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

#include "svkit/models/checkpoint.h"

#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace svkit {

namespace {

constexpr char kMagic[8] = {'S', 'V', 'K', 'C', 'K', 'P', 'T', '1'};
constexpr uint32_t kVersion = 1;

void PutU16(std::ostream& out, uint16_t v) {
  const unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                              static_cast<unsigned char>(v >> 8)};
  out.write(reinterpret_cast<const char*>(b), 2);
}

void PutU32(std::ostream& out, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void PutF64(std::ostream& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i)
    b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void PutString(std::ostream& out, const std::string& s) {
  if (s.size() > 0xffff)
    throw InputError("checkpoint string longer than 65535 bytes");
  PutU16(out, static_cast<uint16_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint16_t GetU16(std::istream& in) {
  unsigned char b[2];
  if (!in.read(reinterpret_cast<char*>(b), 2))
    throw FormatError("checkpoint truncated");
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t GetU32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw FormatError("checkpoint truncated");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

double GetF64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw FormatError("checkpoint truncated");
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string GetString(std::istream& in) {
  const uint16_t n = GetU16(in);
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), n))
    throw FormatError("checkpoint truncated");
  return s;
}

std::string GetBlock(std::istream& in) {
  const uint32_t n = GetU32(in);
  if (n > (1u << 20)) throw FormatError("checkpoint: config block too large");
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), n))
    throw FormatError("checkpoint truncated");
  return s;
}

}  // namespace

void write_checkpoint(std::ostream& out, const SpeakerEncoder& model,
                      uint32_t step,
                      const std::vector<std::string>& speakers) {
  if (static_cast<int>(speakers.size()) != model.config().n_speakers)
    throw InputError("checkpoint: speaker list size " +
                     std::to_string(speakers.size()) + " != n_speakers " +
                     std::to_string(model.config().n_speakers));
  out.write(kMagic, sizeof(kMagic));
  PutU32(out, kVersion);
  PutU32(out, step);
  const std::string cfg = model.config().to_text();
  PutU32(out, static_cast<uint32_t>(cfg.size()));
  out.write(cfg.data(), static_cast<std::streamsize>(cfg.size()));
  PutU32(out, static_cast<uint32_t>(speakers.size()));
  for (const std::string& s : speakers) PutString(out, s);
  const auto& items = model.params().items();
  PutU32(out, static_cast<uint32_t>(items.size()));
  for (const auto& p : items) {
    PutString(out, p->name);
    out.put(p->is_buffer ? '\1' : '\0');
    PutU32(out, static_cast<uint32_t>(p->value.rows()));
    PutU32(out, static_cast<uint32_t>(p->value.cols()));
    for (Eigen::Index c = 0; c < p->value.cols(); ++c)
      for (Eigen::Index r = 0; r < p->value.rows(); ++r)
        PutF64(out, p->value(r, c));
  }
  if (!out) throw InputError("checkpoint: write failed");
}

LoadedModel read_checkpoint(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw FormatError("not a checkpoint file (bad magic)");
  const uint32_t version = GetU32(in);
  if (version != kVersion)
    throw FormatError("unsupported checkpoint version " +
                      std::to_string(version));
  LoadedModel loaded;
  loaded.step = GetU32(in);
  const ModelConfig cfg = ModelConfig::from_text(GetBlock(in));
  const uint32_t n_speakers = GetU32(in);
  if (static_cast<int>(n_speakers) != cfg.n_speakers)
    throw FormatError("checkpoint: speaker list size " +
                      std::to_string(n_speakers) + " != n_speakers " +
                      std::to_string(cfg.n_speakers));
  loaded.speakers.reserve(n_speakers);
  for (uint32_t i = 0; i < n_speakers; ++i)
    loaded.speakers.push_back(GetString(in));
  loaded.model = build_model(cfg, /*seed=*/0);
  const uint32_t n_tensors = GetU32(in);
  if (n_tensors != loaded.model->params().items().size())
    throw FormatError("checkpoint: expected " +
                      std::to_string(loaded.model->params().items().size()) +
                      " tensors, file has " + std::to_string(n_tensors));
  std::set<std::string> seen;
  for (uint32_t i = 0; i < n_tensors; ++i) {
    const std::string name = GetString(in);
    const int kind = in.get();
    if (kind != 0 && kind != 1)
      throw FormatError("checkpoint: bad tensor kind for " + name);
    const uint32_t rows = GetU32(in);
    const uint32_t cols = GetU32(in);
    nn::Parameter* p = loaded.model->params().find(name);
    if (p == nullptr)
      throw FormatError("checkpoint: unknown tensor " + name);
    if (!seen.insert(name).second)
      throw FormatError("checkpoint: duplicate tensor " + name);
    if (p->is_buffer != (kind == 1))
      throw FormatError("checkpoint: tensor kind mismatch for " + name);
    if (p->value.rows() != static_cast<Eigen::Index>(rows) ||
        p->value.cols() != static_cast<Eigen::Index>(cols))
      throw FormatError("checkpoint: shape mismatch for " + name);
    for (Eigen::Index c = 0; c < p->value.cols(); ++c)
      for (Eigen::Index r = 0; r < p->value.rows(); ++r)
        p->value(r, c) = GetF64(in);
  }
  return loaded;
}

void save_checkpoint(const std::string& path, const SpeakerEncoder& model,
                     uint32_t step,
                     const std::vector<std::string>& speakers) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  write_checkpoint(out, model, step, speakers);
  out.flush();
  if (!out) throw InputError("write failed: " + path);
}

LoadedModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path);
  try {
    return read_checkpoint(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace svkit
