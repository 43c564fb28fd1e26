// svkit/losses/weight_transfer.cc

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

#include "svkit/losses/weight_transfer.h"

#include <cmath>
#include <string>

namespace svkit {

namespace {

void CheckPair(const WeightPair& p) {
  if (p.source == nullptr || p.target == nullptr)
    throw ConfigError("weight transfer: null tensor in pair");
  if (p.source->value.rows() != p.target->value.rows() ||
      p.source->value.cols() != p.target->value.cols())
    throw ConfigError("weight transfer: shape mismatch for " +
                      p.target->name);
}

}  // namespace

std::vector<WeightPair> match_weights(const nn::ParamStore& source,
                                      nn::ParamStore& target) {
  std::vector<WeightPair> pairs;
  for (const auto& t : target.items()) {
    if (t->is_buffer) continue;
    if (t->name.rfind("head.", 0) == 0) continue;
    const nn::Parameter* s = source.find(t->name);
    if (s == nullptr)
      throw ConfigError("weight transfer: source is missing tensor " +
                        t->name);
    WeightPair pair{s, t.get()};
    CheckPair(pair);
    pairs.push_back(pair);
  }
  return pairs;
}

double weight_transfer_loss(const std::vector<WeightPair>& pairs,
                            WtNorm norm) {
  double total = 0.0;
  for (const WeightPair& p : pairs) {
    CheckPair(p);
    const double sq = (p.target->value - p.source->value).squaredNorm();
    total += norm == WtNorm::kGlobal ? sq : std::sqrt(sq);
  }
  return norm == WtNorm::kGlobal ? std::sqrt(total) : total;
}

void FinetuneLossConfig::validate() const {
  if (lambda_wt < 0.0)
    throw ConfigError("lambda_wt must be nonnegative");
  if (weight_decay < 0.0)
    throw ConfigError("weight_decay must be nonnegative");
}

FinetuneLossParts finetune_total_loss(double ce,
                                      const std::vector<WeightPair>& pairs,
                                      const nn::ParamStore& target,
                                      const FinetuneLossConfig& cfg) {
  cfg.validate();
  FinetuneLossParts parts;
  parts.ce = ce;
  parts.wt = weight_transfer_loss(pairs, cfg.norm);
  for (const auto& p : target.items())
    if (!p->is_buffer) parts.l2 += p->value.squaredNorm();
  parts.total = ce + cfg.lambda_wt * parts.wt + cfg.weight_decay * parts.l2;
  return parts;
}

void add_finetune_grads(
    const std::vector<WeightPair>& pairs, const nn::ParamStore& target,
    const FinetuneLossConfig& cfg,
    std::unordered_map<const nn::Parameter*, nn::Tensor>& grads) {
  cfg.validate();
  auto bump = [&grads](const nn::Parameter* p, const nn::Tensor& dg) {
    auto it = grads.find(p);
    if (it == grads.end())
      grads.emplace(p, dg);
    else
      it->second += dg;
  };
  if (cfg.lambda_wt > 0.0) {
    if (cfg.norm == WtNorm::kGlobal) {
      const double wt = weight_transfer_loss(pairs, WtNorm::kGlobal);
      if (wt > 0.0)
        for (const WeightPair& p : pairs)
          bump(p.target, (cfg.lambda_wt / wt) *
                             (p.target->value - p.source->value));
    } else {
      for (const WeightPair& p : pairs) {
        CheckPair(p);
        const nn::Tensor d = p.target->value - p.source->value;
        const double n = d.norm();
        if (n > 0.0) bump(p.target, (cfg.lambda_wt / n) * d);
      }
    }
  }
  if (cfg.weight_decay > 0.0)
    for (const auto& p : target.items())
      if (!p->is_buffer) bump(p.get(), 2.0 * cfg.weight_decay * p->value);
}

}  // namespace svkit
