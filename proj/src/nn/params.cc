// src/nn/params.cc

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

#include "svkit/nn/params.h"

#include <cmath>
#include <random>

namespace svkit {
namespace nn {

namespace {

uint64_t Fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t Mix(uint64_t a, uint64_t b) {
  uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  return x;
}

}  // namespace

Parameter* ParamStore::add(const std::string& name, int rows, int cols,
                           Init init) {
  if (find(name)) throw InputError("duplicate parameter '" + name + "'");
  auto p = std::make_unique<Parameter>();
  p->name = name;
  switch (init) {
    case Init::kZeros:
      p->value = Tensor::Zero(rows, cols);
      break;
    case Init::kOnes:
      p->value = Tensor::Ones(rows, cols);
      break;
    case Init::kFanInNormal: {
      std::mt19937_64 rng(Mix(seed_, Fnv1a(name)));
      std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / cols));
      p->value = Tensor(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) p->value(i, j) = dist(rng);
      break;
    }
  }
  items_.push_back(std::move(p));
  return items_.back().get();
}

Parameter* ParamStore::add_buffer(const std::string& name, int rows, int cols,
                                  double fill) {
  if (find(name)) throw InputError("duplicate parameter '" + name + "'");
  auto p = std::make_unique<Parameter>();
  p->name = name;
  p->value = Tensor::Constant(rows, cols, fill);
  p->is_buffer = true;
  items_.push_back(std::move(p));
  return items_.back().get();
}

Parameter* ParamStore::find(const std::string& name) {
  for (auto& p : items_)
    if (p->name == name) return p.get();
  return nullptr;
}

const Parameter* ParamStore::find(const std::string& name) const {
  for (auto& p : items_)
    if (p->name == name) return p.get();
  return nullptr;
}

size_t ParamStore::learnable_count() const {
  size_t n = 0;
  for (auto& p : items_)
    if (!p->is_buffer) n += static_cast<size_t>(p->value.size());
  return n;
}

}  // namespace nn
}  // namespace svkit
