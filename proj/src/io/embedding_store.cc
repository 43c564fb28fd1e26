// src/io/embedding_store.cc

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

#include "svkit/io/embedding_store.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace svkit {

namespace {

const char kMagic[5] = {'E', 'M', 'B', 'V', '1'};

void PutU32(std::ostream& out, uint32_t v) {
  char b[4];
  b[0] = static_cast<char>(v & 0xff);
  b[1] = static_cast<char>((v >> 8) & 0xff);
  b[2] = static_cast<char>((v >> 16) & 0xff);
  b[3] = static_cast<char>((v >> 24) & 0xff);
  out.write(b, 4);
}

void PutU16(std::ostream& out, uint16_t v) {
  char b[2];
  b[0] = static_cast<char>(v & 0xff);
  b[1] = static_cast<char>((v >> 8) & 0xff);
  out.write(b, 2);
}

void PutF32(std::ostream& out, float v) {
  static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  PutU32(out, bits);
}

bool GetU32(std::istream& in, uint32_t* v) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
  *v = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
       (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
  return true;
}

bool GetU16(std::istream& in, uint16_t* v) {
  unsigned char b[2];
  if (!in.read(reinterpret_cast<char*>(b), 2)) return false;
  *v = static_cast<uint16_t>(b[0] | (b[1] << 8));
  return true;
}

}  // namespace

EmbeddingStore::EmbeddingStore(int dim) : dim_(dim) {
  if (dim <= 0) throw InputError("embedding dim must be positive");
}

void EmbeddingStore::insert(const std::string& id, std::vector<float> vec) {
  if (static_cast<int>(vec.size()) != dim_)
    throw InputError("embedding for '" + id + "' has dim " +
                     std::to_string(vec.size()) + ", store expects " +
                     std::to_string(dim_));
  if (index_.count(id))
    throw InputError("duplicate embedding id '" + id + "'");
  index_[id] = entries_.size();
  entries_.emplace_back(id, std::move(vec));
}

const std::vector<float>* EmbeddingStore::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  return &entries_[it->second].second;
}

bool EmbeddingStore::operator==(const EmbeddingStore& other) const {
  return dim_ == other.dim_ && entries_ == other.entries_;
}

void write_embeddings(const EmbeddingStore& store, std::ostream& out) {
  out.write(kMagic, 5);
  PutU32(out, static_cast<uint32_t>(store.dim()));
  for (const auto& [id, vec] : store.entries()) {
    if (id.size() > 0xffff)
      throw InputError("embedding id longer than 65535 bytes: '" +
                       id.substr(0, 32) + "...'");
    PutU16(out, static_cast<uint16_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    for (float v : vec) PutF32(out, v);
  }
  if (!out) throw FormatError("embedding write failed");
}

EmbeddingStore read_embeddings(std::istream& in) {
  char magic[5];
  if (!in.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0)
    throw FormatError("bad embedding file magic, expected EMBV1");
  uint32_t dim;
  if (!GetU32(in, &dim)) throw FormatError("embedding header truncated");
  if (dim == 0 || dim > (1u << 20))
    throw FormatError("embedding dim " + std::to_string(dim) +
                      " out of range");
  EmbeddingStore store(static_cast<int>(dim));
  for (;;) {
    uint16_t id_len;
    if (!GetU16(in, &id_len)) {
      if (in.eof() && in.gcount() == 0) break;
      throw FormatError("embedding record truncated at entry " +
                        std::to_string(store.size()));
    }
    std::string id(id_len, '\0');
    if (id_len > 0 && !in.read(id.data(), id_len))
      throw FormatError("embedding id truncated at entry " +
                        std::to_string(store.size()));
    std::vector<float> vec(dim);
    std::vector<unsigned char> raw(4 * static_cast<size_t>(dim));
    if (!in.read(reinterpret_cast<char*>(raw.data()),
                 static_cast<std::streamsize>(raw.size())))
      throw FormatError("embedding data truncated for id '" + id + "'");
    for (uint32_t i = 0; i < dim; ++i) {
      uint32_t bits = static_cast<uint32_t>(raw[4 * i]) |
                      (static_cast<uint32_t>(raw[4 * i + 1]) << 8) |
                      (static_cast<uint32_t>(raw[4 * i + 2]) << 16) |
                      (static_cast<uint32_t>(raw[4 * i + 3]) << 24);
      std::memcpy(&vec[i], &bits, 4);
    }
    try {
      store.insert(id, std::move(vec));
    } catch (const InputError& e) {
      throw FormatError(e.what());
    }
  }
  return store;
}

void save_embeddings(const EmbeddingStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_embeddings(store, out);
  out.flush();
  if (!out) throw FormatError("write to '" + path + "' failed");
}

EmbeddingStore load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open embedding file '" + path + "'");
  try {
    return read_embeddings(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace svkit
