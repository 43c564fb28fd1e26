// svkit/io/embedding_store.h

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

#ifndef SVKIT_IO_EMBEDDING_STORE_H_
#define SVKIT_IO_EMBEDDING_STORE_H_

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "svkit/common.h"

namespace svkit {

// Fixed-dimension embedding vectors keyed by id. Insertion order is
// preserved so that write(read(bytes)) is byte-identical.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(int dim);

  int dim() const { return dim_; }
  size_t size() const { return entries_.size(); }

  // InputError on duplicate id or dimension mismatch.
  void insert(const std::string& id, std::vector<float> vec);

  // nullptr when absent.
  const std::vector<float>* find(const std::string& id) const;

  const std::vector<std::pair<std::string, std::vector<float>>>& entries()
      const {
    return entries_;
  }

  bool operator==(const EmbeddingStore& other) const;

 private:
  int dim_;
  std::vector<std::pair<std::string, std::vector<float>>> entries_;
  std::unordered_map<std::string, size_t> index_;
};

// Binary format: magic "EMBV1", uint32 LE dim, then per record a uint16 LE
// id byte-length, the UTF-8 id, and dim little-endian IEEE-754 32-bit
// floats. Round-trips are bit-exact.
void write_embeddings(const EmbeddingStore& store, std::ostream& out);

// FormatError on bad magic, truncated record, or duplicate id. Never
// returns a partial store.
EmbeddingStore read_embeddings(std::istream& in);

void save_embeddings(const EmbeddingStore& store, const std::string& path);
EmbeddingStore load_embeddings(const std::string& path);

}  // namespace svkit

#endif  // SVKIT_IO_EMBEDDING_STORE_H_
