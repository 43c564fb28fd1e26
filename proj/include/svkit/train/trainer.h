// svkit/train/trainer.h

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

#ifndef SVKIT_TRAIN_TRAINER_H_
#define SVKIT_TRAIN_TRAINER_H_

#include <memory>
#include <string>
#include <vector>

#include "svkit/augment/augment.h"
#include "svkit/losses/aam.h"
#include "svkit/losses/weight_transfer.h"
#include "svkit/models/model.h"
#include "svkit/train/dataset.h"
#include "svkit/train/optimizer.h"
#include "svkit/train/schedule.h"

namespace svkit {

struct TrainConfig {
  double lr_min = 1e-8;
  double lr_max = 1e-3;
  // 0 resolves to two passes over the data (in batches), never below 1.
  long half_cycle_steps = 0;
  int batch_size = 16;
  double crop_seconds = 3.0;
  long max_steps = 200;
  uint64_t seed = 1;
  double weight_decay = 2e-4;
  AdamConfig adam;

  // ConfigError on nonpositive sizes, steps, or crop, or bad rates.
  void validate() const;
};

struct FinetuneConfig {
  std::string mode = "weight_transfer";  // or "vanilla"
  double lambda_wt = 1.0;
  WtNorm norm = WtNorm::kGlobal;

  // ConfigError on an unknown mode or a negative lambda.
  void validate() const;
};

struct StepStats {
  long step = 0;
  double lr = 0.0;
  double loss = 0.0;      // full objective
  double ce = 0.0;        // classification term
  double wt = 0.0;        // anchor distance (monitored even when unpenalized)
  double accuracy = 0.0;  // batch top-1
};

struct TrainResult {
  std::vector<StepStats> trace;
  // Full-pass eval-mode accuracy over the training utterances.
  double final_accuracy = 0.0;
};

// Copies every matched learnable tensor and every running buffer of source
// into target; the target head keeps its fresh initialization. ConfigError
// names the first missing or shape-mismatched tensor.
void transfer_weights(const SpeakerEncoder& source, SpeakerEncoder& target);

// Finetuning model factory: the source architecture with a fresh unit-norm
// head for n_speakers and all other tensors copied from source.
std::unique_ptr<SpeakerEncoder> init_finetune_model(
    const SpeakerEncoder& source, int n_speakers, uint64_t seed);

// Eval-mode classification accuracy of the model's head over every
// utterance of the set, full recordings, no augmentation.
double train_accuracy(SpeakerEncoder& model, const TrainSet& data,
                      const FeatureConfig& feat);

// AAM training loop: speaker-balanced batches, random crops, optional
// augmentation, triangular2 schedule, Adam, head rows renormalized after
// every step. All randomness derives from cfg.seed.
class Trainer {
 public:
  // ConfigError when the model is headless, the head size differs from the
  // speaker count, the mel widths disagree, or fewer than two speakers are
  // present.
  Trainer(SpeakerEncoder& model, const TrainSet& data, const TrainConfig& cfg,
          const FeatureConfig& feat = {}, const AamConfig& aam = {});

  // Applies the policy to every training crop; bank may outlive the call.
  void enable_augmentation(const AugmentPolicy& policy, const NoiseBank* bank);

  TrainResult train();

  // Finetunes against a frozen source encoder: the anchor distance to the
  // source weights is tracked every step and, in weight_transfer mode,
  // penalized with lambda_wt.
  TrainResult finetune(const SpeakerEncoder& source,
                       const FinetuneConfig& fcfg);

 private:
  TrainResult run(const std::vector<WeightPair>& pairs,
                  const FinetuneLossConfig& floss);

  SpeakerEncoder& model_;
  const TrainSet& data_;
  TrainConfig cfg_;
  FeatureConfig feat_;
  AamConfig aam_;
  LrSchedule sched_;
  bool augment_ = false;
  AugmentPolicy policy_;
  const NoiseBank* bank_ = nullptr;
};

}  // namespace svkit

#endif  // SVKIT_TRAIN_TRAINER_H_
