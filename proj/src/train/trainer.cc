// svkit/train/trainer.cc

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

#include "svkit/train/trainer.h"

#include <cmath>

namespace svkit {

void TrainConfig::validate() const {
  LrSchedule{lr_min, lr_max, half_cycle_steps > 0 ? half_cycle_steps : 1}
      .validate();
  if (half_cycle_steps < 0)
    throw ConfigError("half_cycle_steps must be nonnegative");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (!(crop_seconds > 0.0))
    throw ConfigError("crop_seconds must be positive");
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (weight_decay < 0.0)
    throw ConfigError("weight_decay must be nonnegative");
  adam.validate();
}

void FinetuneConfig::validate() const {
  if (mode != "weight_transfer" && mode != "vanilla")
    throw ConfigError("finetune mode must be weight_transfer or vanilla, got " +
                      mode);
  if (lambda_wt < 0.0) throw ConfigError("lambda_wt must be nonnegative");
}

void transfer_weights(const SpeakerEncoder& source, SpeakerEncoder& target) {
  for (const WeightPair& pair :
       match_weights(source.params(), target.params()))
    pair.target->value = pair.source->value;
  for (const auto& item : target.params().items()) {
    if (!item->is_buffer) continue;
    const nn::Parameter* src = source.params().find(item->name);
    if (src == nullptr)
      throw ConfigError("weight transfer: source is missing tensor " +
                        item->name);
    if (src->value.rows() != item->value.rows() ||
        src->value.cols() != item->value.cols())
      throw ConfigError("weight transfer: shape mismatch for " + item->name);
    item->value = src->value;
  }
}

std::unique_ptr<SpeakerEncoder> init_finetune_model(
    const SpeakerEncoder& source, int n_speakers, uint64_t seed) {
  ModelConfig cfg = source.config();
  cfg.n_speakers = n_speakers;
  std::unique_ptr<SpeakerEncoder> target = build_model(cfg, seed);
  transfer_weights(source, *target);
  return target;
}

double train_accuracy(SpeakerEncoder& model, const TrainSet& data,
                      const FeatureConfig& feat) {
  const nn::Parameter* head = model.head();
  if (head == nullptr)
    throw ConfigError("accuracy needs a model with a classifier head");
  Eigen::MatrixXd rows = head->value;
  for (long r = 0; r < rows.rows(); ++r) {
    const double nrm = rows.row(r).norm();
    if (nrm > 1e-12) rows.row(r) /= nrm;
  }
  int correct = 0;
  for (const TrainUtterance& u : data.utterances()) {
    nn::Graph g;
    const FeatureMatrix f = mean_normalize(compute_log_mel(u.wav, feat));
    const nn::Var emb = model.forward(g, f, nn::Mode::kEval);
    Eigen::VectorXd e = emb->value.col(0);
    const double nrm = e.norm();
    if (nrm > 1e-12) e /= nrm;
    Eigen::Index arg = 0;
    (rows * e).maxCoeff(&arg);
    const auto it = std::lower_bound(data.speakers().begin(),
                                     data.speakers().end(), u.speaker_id);
    const int label =
        static_cast<int>(it - data.speakers().begin());
    if (static_cast<int>(arg) == label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

Trainer::Trainer(SpeakerEncoder& model, const TrainSet& data,
                 const TrainConfig& cfg, const FeatureConfig& feat,
                 const AamConfig& aam)
    : model_(model), data_(data), cfg_(cfg), feat_(feat), aam_(aam) {
  cfg_.validate();
  aam_.validate();
  if (data_.n_speakers() < 2)
    throw ConfigError("training needs at least 2 speakers, got " +
                      std::to_string(data_.n_speakers()));
  if (model_.head() == nullptr)
    throw ConfigError("training needs a model with a classifier head");
  if (model_.head()->value.rows() != data_.n_speakers())
    throw ConfigError("head has " +
                      std::to_string(model_.head()->value.rows()) +
                      " rows for " + std::to_string(data_.n_speakers()) +
                      " speakers");
  if (model_.config().n_mels != feat_.n_mels)
    throw ConfigError("model expects " +
                      std::to_string(model_.config().n_mels) +
                      " mel bins, features provide " +
                      std::to_string(feat_.n_mels));
  long half = cfg_.half_cycle_steps;
  if (half == 0) {
    const long batches_per_pass =
        (static_cast<long>(data_.size()) + cfg_.batch_size - 1) /
        cfg_.batch_size;
    half = 2 * batches_per_pass;
  }
  sched_ = LrSchedule{cfg_.lr_min, cfg_.lr_max, std::max<long>(1, half)};
}

void Trainer::enable_augmentation(const AugmentPolicy& policy,
                                  const NoiseBank* bank) {
  policy.validate();
  if (bank == nullptr) throw ConfigError("augmentation needs a noise bank");
  augment_ = true;
  policy_ = policy;
  bank_ = bank;
}

TrainResult Trainer::train() {
  const std::vector<WeightPair> no_pairs;
  FinetuneLossConfig floss;
  floss.lambda_wt = 0.0;
  floss.weight_decay = cfg_.weight_decay;
  return run(no_pairs, floss);
}

TrainResult Trainer::finetune(const SpeakerEncoder& source,
                              const FinetuneConfig& fcfg) {
  fcfg.validate();
  const std::vector<WeightPair> pairs =
      match_weights(source.params(), model_.params());
  FinetuneLossConfig floss;
  floss.lambda_wt = fcfg.mode == "weight_transfer" ? fcfg.lambda_wt : 0.0;
  floss.weight_decay = cfg_.weight_decay;
  floss.norm = fcfg.norm;
  return run(pairs, floss);
}

TrainResult Trainer::run(const std::vector<WeightPair>& pairs,
                         const FinetuneLossConfig& floss) {
  TrainResult result;
  Adam adam(cfg_.adam);
  for (long step = 0; step < cfg_.max_steps; ++step) {
    nn::Graph g;
    std::vector<nn::Var> embs;
    std::vector<int> labels;
    embs.reserve(cfg_.batch_size);
    for (int i = 0; i < cfg_.batch_size; ++i) {
      const TrainSet::Slot slot =
          data_.slot(step * static_cast<long>(cfg_.batch_size) + i);
      std::mt19937_64 rng = derive_rng(cfg_.seed, static_cast<uint64_t>(step),
                                       static_cast<uint64_t>(i));
      const long n = std::llround(cfg_.crop_seconds *
                                  slot.utt->wav.sample_rate);
      const Waveform crop = crop_or_pad(slot.utt->wav, n, rng);
      const FeatureMatrix f =
          augment_ ? compose_augmentations(crop, policy_, *bank_, feat_, rng)
                   : mean_normalize(compute_log_mel(crop, feat_));
      embs.push_back(model_.forward(g, f, nn::Mode::kTrain));
      labels.push_back(slot.label);
    }
    const nn::Var emb = nn::transpose(g, nn::concat_cols(g, embs));
    const AamLoss al = aam_softmax_loss(g, emb, labels, model_.head(), aam_);
    const double ce = al.loss->value(0, 0);
    const FinetuneLossParts parts =
        finetune_total_loss(ce, pairs, model_.params(), floss);
    nn::GradMap gm = g.backward(al.loss);
    auto grads = gm.params;
    add_finetune_grads(pairs, model_.params(), floss, grads);
    adam.step(model_.params(), grads, triangular2_lr(sched_, step));
    nn::Parameter* head = model_.head();
    for (long r = 0; r < head->value.rows(); ++r) {
      const double nrm = head->value.row(r).norm();
      if (nrm > 1e-12) head->value.row(r) /= nrm;
    }
    int correct = 0;
    for (size_t b = 0; b < labels.size(); ++b) {
      Eigen::Index arg = 0;
      al.logits->value.row(static_cast<long>(b)).maxCoeff(&arg);
      if (static_cast<int>(arg) == labels[b]) ++correct;
    }
    StepStats st;
    st.step = step;
    st.lr = triangular2_lr(sched_, step);
    st.loss = parts.total;
    st.ce = ce;
    st.wt = parts.wt;
    st.accuracy =
        static_cast<double>(correct) / static_cast<double>(labels.size());
    result.trace.push_back(st);
  }
  result.final_accuracy = train_accuracy(model_, data_, feat_);
  return result;
}

}  // namespace svkit
