// tests/test_train.cc

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

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "svkit/train/dataset.h"
#include "svkit/train/optimizer.h"
#include "svkit/train/schedule.h"
#include "svkit/train/toy.h"
#include "svkit/train/trainer.h"

namespace svkit {
namespace {

ModelConfig TinyEcapa(int n_speakers) {
  ModelConfig cfg;
  cfg.arch = "ecapa";
  cfg.channels = 16;
  cfg.embedding_dim = 8;
  cfg.res2_scale = 2;
  cfg.se_reduction = 8;
  cfg.att_channels = 8;
  cfg.n_speakers = n_speakers;
  return cfg;
}

ToyCorpusConfig MiniToy(int speakers, int utts, const std::string& profile) {
  ToyCorpusConfig cfg;
  cfg.n_speakers = speakers;
  cfg.utts_per_speaker = utts;
  cfg.utt_seconds = 1.2;
  cfg.seed = 11;
  cfg.profile = profile;
  return cfg;
}

TrainConfig MiniTrain(long steps) {
  TrainConfig cfg;
  cfg.batch_size = 4;
  cfg.crop_seconds = 1.0;
  cfg.max_steps = steps;
  cfg.seed = 5;
  cfg.lr_max = 2e-3;
  return cfg;
}

TEST_CASE("triangular2 hits the frozen anchor values") {
  LrSchedule s;
  s.half_cycle_steps = 250;
  CHECK(std::abs(triangular2_lr(s, 0) - 1e-8) <= 1e-12);
  CHECK(std::abs(triangular2_lr(s, 250) - 1e-3) <= 1e-12);
  CHECK(std::abs(triangular2_lr(s, 500) - 1e-8) <= 1e-12);
  CHECK(std::abs(triangular2_lr(s, 750) - 5.00005e-4) <= 1e-12);
  // Next cycle's peak is halved again.
  CHECK(std::abs(triangular2_lr(s, 1250) -
                 (1e-8 + (1e-3 - 1e-8) * 0.25)) <= 1e-12);
}

TEST_CASE("triangular2 is piecewise linear and symmetric about the peak") {
  LrSchedule s;
  s.half_cycle_steps = 100;
  for (int k = 0; k <= 100; ++k) {
    const double up = triangular2_lr(s, k);
    const double down = triangular2_lr(s, 200 - k);
    CHECK(std::abs(up - down) <= 1e-15);
    const double want = 1e-8 + (1e-3 - 1e-8) * (k / 100.0);
    CHECK(std::abs(up - want) <= 1e-15);
  }
}

TEST_CASE("schedule validation") {
  LrSchedule s;
  s.half_cycle_steps = 0;
  CHECK_THROWS_AS(triangular2_lr(s, 0), ConfigError);
  s.half_cycle_steps = 10;
  s.lr_min = 0.0;
  CHECK_THROWS_AS(triangular2_lr(s, 0), ConfigError);
  s = LrSchedule();
  s.lr_max = s.lr_min / 2;
  CHECK_THROWS_AS(triangular2_lr(s, 0), ConfigError);
  s = LrSchedule();
  CHECK_THROWS_AS(triangular2_lr(s, -1), InputError);
}

TEST_CASE("adam first step moves by about lr against the gradient sign") {
  nn::ParamStore ps(1);
  nn::Parameter* w = ps.add("w", 2, 2, nn::Init::kFanInNormal);
  const nn::Tensor before = w->value;
  std::unordered_map<const nn::Parameter*, nn::Tensor> grads;
  nn::Tensor g(2, 2);
  g << 1.0, -2.0, 0.5, -0.25;
  grads[w] = g;
  Adam adam(AdamConfig{});
  adam.step(ps, grads, 1e-2);
  // Bias correction makes the first update lr * g / (|g| + eps).
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const double delta = w->value(r, c) - before(r, c);
      const double want = -1e-2 * g(r, c) / (std::abs(g(r, c)) + 1e-8);
      CHECK(std::abs(delta - want) < 1e-9);
    }
  CHECK(adam.steps_taken() == 1);
}

TEST_CASE("adam leaves buffers and gradient-free tensors alone") {
  nn::ParamStore ps(1);
  nn::Parameter* w = ps.add("w", 3, 1, nn::Init::kOnes);
  nn::Parameter* idle = ps.add("idle", 3, 1, nn::Init::kOnes);
  nn::Parameter* buf = ps.add_buffer("buf", 3, 1, 0.5);
  std::unordered_map<const nn::Parameter*, nn::Tensor> grads;
  grads[w] = nn::Tensor::Ones(3, 1);
  grads[buf] = nn::Tensor::Ones(3, 1);  // must be ignored
  Adam adam(AdamConfig{});
  adam.step(ps, grads, 0.1);
  CHECK(w->value(0, 0) < 1.0);
  CHECK(idle->value == nn::Tensor::Ones(3, 1));
  CHECK(buf->value == nn::Tensor::Constant(3, 1, 0.5));

  grads[w] = nn::Tensor::Ones(2, 2);
  CHECK_THROWS_AS(adam.step(ps, grads, 0.1), InputError);

  AdamConfig bad;
  bad.beta1 = 1.0;
  CHECK_THROWS_AS(Adam{bad}, ConfigError);
}

TEST_CASE("derived rng streams are reproducible and distinct") {
  std::mt19937_64 a = derive_rng(7, 3, 9);
  std::mt19937_64 b = derive_rng(7, 3, 9);
  std::mt19937_64 c = derive_rng(7, 3, 10);
  CHECK(a() == b());
  CHECK(a() == b());
  std::mt19937_64 a2 = derive_rng(7, 3, 9);
  CHECK(a2() != c());
}

TEST_CASE("crop is a contiguous window and padding tiles cyclically") {
  Waveform w;
  w.samples.resize(1000);
  for (size_t i = 0; i < w.samples.size(); ++i)
    w.samples[i] = static_cast<double>(i);

  std::mt19937_64 rng(3);
  const Waveform crop = crop_or_pad(w, 300, rng);
  REQUIRE(crop.samples.size() == 300);
  const long start = static_cast<long>(crop.samples[0]);
  CHECK(start >= 0);
  CHECK(start <= 700);
  for (int i = 0; i < 300; ++i)
    CHECK(crop.samples[static_cast<size_t>(i)] ==
          static_cast<double>(start + i));

  Waveform tiny;
  tiny.samples = {1.0, 2.0, 3.0};
  const Waveform padded = crop_or_pad(tiny, 8, rng);
  const std::vector<double> want = {1, 2, 3, 1, 2, 3, 1, 2};
  CHECK(padded.samples == want);

  CHECK_THROWS_AS(crop_or_pad(w, 0, rng), ConfigError);
  Waveform empty;
  CHECK_THROWS_AS(crop_or_pad(empty, 10, rng), InputError);
}

TEST_CASE("train set batches are speaker balanced and cycle all utterances") {
  std::vector<TrainUtterance> utts;
  const int counts[3] = {2, 3, 4};
  const std::string spks[3] = {"alpha", "bravo", "charlie"};
  for (int s = 0; s < 3; ++s)
    for (int u = 0; u < counts[s]; ++u) {
      TrainUtterance t;
      t.utt_id = spks[s] + "_" + std::to_string(u);
      t.speaker_id = spks[s];
      t.wav.samples.assign(100, 0.1);
      utts.push_back(t);
    }
  const TrainSet data(utts, 9);
  CHECK(data.n_speakers() == 3);
  CHECK(data.speakers() == std::vector<std::string>{"alpha", "bravo",
                                                    "charlie"});
  // Every window of three slots covers each speaker once.
  for (long k = 0; k < 36; k += 3) {
    std::set<int> labels;
    for (long i = 0; i < 3; ++i) labels.insert(data.slot(k + i).label);
    CHECK(labels == std::set<int>{0, 1, 2});
  }
  // Walking one speaker's slots visits all its utterances before repeats.
  for (int s = 0; s < 3; ++s) {
    std::set<std::string> seen;
    for (int rep = 0; rep < counts[s]; ++rep)
      seen.insert(data.slot(s + 3L * rep).utt->utt_id);
    CHECK(static_cast<int>(seen.size()) == counts[s]);
    CHECK(data.slot(s).utt->utt_id ==
          data.slot(s + 3L * counts[s]).utt->utt_id);
  }
  CHECK_THROWS_AS(data.slot(-1), InputError);
  CHECK_THROWS_AS(TrainSet(std::vector<TrainUtterance>{}, 1), InputError);
}

TEST_CASE("toy corpus is deterministic and speaker distinct") {
  const auto a = make_toy_corpus(MiniToy(3, 2, "base"));
  const auto b = make_toy_corpus(MiniToy(3, 2, "base"));
  REQUIRE(a.size() == 6);
  CHECK(a[0].utt_id == "s00_u00");
  CHECK(a[5].utt_id == "s02_u01");
  CHECK(a[0].speaker_id == "s00");
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].wav.samples == b[i].wav.samples);
  // Different speakers and different utterances differ.
  CHECK(a[0].wav.samples != a[1].wav.samples);
  CHECK(a[0].wav.samples != a[2].wav.samples);
  for (const auto& u : a) {
    CHECK(u.wav.samples.size() == static_cast<size_t>(1.2 * 16000));
    double peak = 0.0;
    for (double v : u.wav.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak == doctest::Approx(0.3).epsilon(1e-9));
  }
  // The shifted profile is a different domain with its own speaker ids.
  const auto shifted = make_toy_corpus(MiniToy(3, 2, "shifted"));
  CHECK(shifted[0].speaker_id == "t00");
  CHECK(shifted[0].wav.samples != a[0].wav.samples);

  ToyCorpusConfig bad = MiniToy(3, 2, "narrowband");
  CHECK_THROWS_AS(make_toy_corpus(bad), ConfigError);
  bad = MiniToy(0, 2, "base");
  CHECK_THROWS_AS(make_toy_corpus(bad), ConfigError);
}

TEST_CASE("trainer constructor rejects bad wiring") {
  const auto utts = make_toy_corpus(MiniToy(2, 2, "base"));
  const TrainSet data(utts, 1);
  const TrainConfig cfg = MiniTrain(2);

  auto headless = build_model(TinyEcapa(0), 1);
  CHECK_THROWS_WITH_AS(Trainer(*headless, data, cfg),
                       "training needs a model with a classifier head",
                       ConfigError);

  auto wrong_head = build_model(TinyEcapa(5), 1);
  CHECK_THROWS_AS(Trainer(*wrong_head, data, cfg), ConfigError);

  std::vector<TrainUtterance> solo(utts.begin(), utts.begin() + 2);
  const TrainSet one_speaker(solo, 1);
  auto model = build_model(TinyEcapa(1), 1);
  CHECK_THROWS_WITH_AS(Trainer(*model, one_speaker, cfg),
                       "training needs at least 2 speakers, got 1",
                       ConfigError);

  auto ok = build_model(TinyEcapa(2), 1);
  FeatureConfig narrow;
  narrow.n_mels = 40;
  CHECK_THROWS_AS(Trainer(*ok, data, cfg, narrow), ConfigError);
}

TEST_CASE("training lowers the loss and is seed reproducible") {
  const auto utts = make_toy_corpus(MiniToy(4, 4, "base"));
  const TrainSet data(utts, 5);
  const TrainConfig cfg = MiniTrain(24);

  auto model_a = build_model(TinyEcapa(4), 3);
  Trainer trainer_a(*model_a, data, cfg);
  const TrainResult ra = trainer_a.train();

  auto model_b = build_model(TinyEcapa(4), 3);
  Trainer trainer_b(*model_b, data, cfg);
  const TrainResult rb = trainer_b.train();

  REQUIRE(ra.trace.size() == 24);
  REQUIRE(rb.trace.size() == 24);
  for (size_t i = 0; i < ra.trace.size(); ++i) {
    CHECK(ra.trace[i].loss == rb.trace[i].loss);
    CHECK(ra.trace[i].lr == rb.trace[i].lr);
    CHECK(ra.trace[i].accuracy == rb.trace[i].accuracy);
  }
  CHECK(ra.final_accuracy == rb.final_accuracy);

  double head = 0.0, tail = 0.0;
  for (int i = 0; i < 8; ++i) {
    head += ra.trace[static_cast<size_t>(i)].ce;
    tail += ra.trace[ra.trace.size() - 1 - static_cast<size_t>(i)].ce;
  }
  CHECK(tail < head);
  for (const StepStats& st : ra.trace) {
    CHECK(st.wt == 0.0);
    CHECK(st.accuracy >= 0.0);
    CHECK(st.accuracy <= 1.0);
  }
  CHECK(ra.final_accuracy >= 0.0);
  CHECK(ra.final_accuracy <= 1.0);
}

TEST_CASE("weight transfer initialization anchors the finetune run") {
  const auto source_utts = make_toy_corpus(MiniToy(3, 3, "base"));
  const TrainSet source_data(source_utts, 2);
  auto source = build_model(TinyEcapa(3), 7);
  Trainer pre(*source, source_data, MiniTrain(10));
  pre.train();

  const auto target_utts = make_toy_corpus(MiniToy(3, 3, "shifted"));
  const TrainSet target_data(target_utts, 2);

  // Transferred weights match the source exactly, head aside.
  auto wt_model = init_finetune_model(*source, 3, 99);
  const auto pairs = match_weights(source->params(), wt_model->params());
  CHECK(weight_transfer_loss(pairs) == 0.0);
  for (const auto& item : wt_model->params().items())
    if (item->is_buffer)
      CHECK(item->value == source->params().find(item->name)->value);
  CHECK(wt_model->head()->value != source->head()->value);
  for (long r = 0; r < wt_model->head()->value.rows(); ++r)
    CHECK(wt_model->head()->value.row(r).norm() == doctest::Approx(1.0));

  TrainConfig cfg = MiniTrain(12);
  FinetuneConfig fc;
  fc.mode = "weight_transfer";
  fc.lambda_wt = 1.0;
  Trainer wt_trainer(*wt_model, target_data, cfg);
  const TrainResult wt_run = wt_trainer.finetune(*source, fc);

  auto van_model = init_finetune_model(*source, 3, 99);
  FinetuneConfig vf;
  vf.mode = "vanilla";
  Trainer van_trainer(*van_model, target_data, cfg);
  const TrainResult van_run = van_trainer.finetune(*source, vf);

  // The anchor distance starts at exactly zero in both runs.
  CHECK(wt_run.trace.front().wt == 0.0);
  CHECK(van_run.trace.front().wt == 0.0);
  // The penalized run stays strictly closer to the source.
  const double wt_final =
      weight_transfer_loss(match_weights(source->params(),
                                         wt_model->params()));
  const double van_final =
      weight_transfer_loss(match_weights(source->params(),
                                         van_model->params()));
  CHECK(wt_final > 0.0);
  CHECK(wt_final < van_final);
}

TEST_CASE("transfer to a mismatched architecture names the tensor") {
  auto source = build_model(TinyEcapa(3), 1);
  ModelConfig wider = TinyEcapa(3);
  wider.channels = 24;
  wider.embedding_dim = 8;
  auto target = build_model(wider, 1);
  CHECK_THROWS_WITH_AS(transfer_weights(*source, *target),
                       "weight transfer: shape mismatch for frame.conv1.weight",
                       ConfigError);
}

TEST_CASE("train and finetune config validation") {
  TrainConfig cfg;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig();
  cfg.crop_seconds = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig();
  cfg.max_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig();
  cfg.weight_decay = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig();
  cfg.half_cycle_steps = -3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_NOTHROW(TrainConfig().validate());

  FinetuneConfig fc;
  fc.mode = "frozen";
  CHECK_THROWS_AS(fc.validate(), ConfigError);
  fc = FinetuneConfig();
  fc.lambda_wt = -0.5;
  CHECK_THROWS_AS(fc.validate(), ConfigError);
  CHECK_NOTHROW(FinetuneConfig().validate());
}

}  // namespace
}  // namespace svkit
