// svkit/nn/params.h

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

#ifndef SVKIT_NN_PARAMS_H_
#define SVKIT_NN_PARAMS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "svkit/nn/graph.h"

namespace svkit {
namespace nn {

// Buffers (running statistics) are saved and restored but never trained
// and never regularized.
struct Parameter {
  std::string name;
  Tensor value;
  bool is_buffer = false;
};

enum class Init { kZeros, kOnes, kFanInNormal };

// Named tensor registry. Initialization draws from an rng seeded by
// (seed, name) so values do not depend on registration order.
class ParamStore {
 public:
  explicit ParamStore(uint64_t seed) : seed_(seed) {}
  ParamStore(const ParamStore&) = delete;
  ParamStore& operator=(const ParamStore&) = delete;

  // InputError on duplicate names.
  Parameter* add(const std::string& name, int rows, int cols, Init init);
  Parameter* add_buffer(const std::string& name, int rows, int cols,
                        double fill);

  // nullptr when absent.
  Parameter* find(const std::string& name);
  const Parameter* find(const std::string& name) const;

  const std::vector<std::unique_ptr<Parameter>>& items() const {
    return items_;
  }

  size_t learnable_count() const;
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::vector<std::unique_ptr<Parameter>> items_;
};

}  // namespace nn
}  // namespace svkit

#endif  // SVKIT_NN_PARAMS_H_
