// tests/acceptance/acceptance_main.cc

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

// Release gate: one binary, one pass/fail line per criterion. argv[1] is
// the svkit command-line binary; pipeline criteria shell out to it, the
// rest exercise the library directly. Exits nonzero on any failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "svkit/augment/augment.h"
#include "svkit/feat/fbank.h"
#include "svkit/io/embedding_store.h"
#include "svkit/io/manifest.h"
#include "svkit/io/score_file.h"
#include "svkit/io/wav.h"
#include "svkit/losses/aam.h"
#include "svkit/losses/weight_transfer.h"
#include "svkit/models/checkpoint.h"
#include "svkit/models/ecapa.h"
#include "svkit/models/resnet.h"
#include "svkit/nn/graph.h"
#include "svkit/nn/layers.h"
#include "svkit/nn/ops.h"
#include "svkit/scoring/scoring.h"
#include "svkit/train/dataset.h"
#include "svkit/train/schedule.h"
#include "svkit/train/trainer.h"

namespace fs = std::filesystem;

using svkit::nn::Graph;
using svkit::nn::Init;
using svkit::nn::Mode;
using svkit::nn::Parameter;
using svkit::nn::ParamStore;
using svkit::nn::Tensor;
using svkit::nn::Var;

namespace {

std::string g_cli;
fs::path g_work;

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult RunCli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {127, "popen failed"};
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int rc = pclose(pipe);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : 128, out};
}

// First number following `prefix` in `text`; NaN when absent.
double NumberAfter(const std::string& text, const std::string& prefix) {
  const size_t pos = text.find(prefix);
  if (pos == std::string::npos) return std::nan("");
  return std::atof(text.c_str() + pos + prefix.size());
}

std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  return buf;
}

Tensor RandomTensor(int r, int c, std::mt19937& rng, double sd = 1.0) {
  std::normal_distribution<double> dist(0.0, sd);
  Tensor t(r, c);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = dist(rng);
  return t;
}

svkit::FeatureMatrix RandomFeatures(int T, int n_mels, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  svkit::FeatureMatrix f(T, n_mels);
  for (int t = 0; t < T; ++t)
    for (int m = 0; m < n_mels; ++m) f(t, m) = dist(rng);
  return f;
}

double SignalPower(const std::vector<double>& x) {
  double p = 0.0;
  for (double v : x) p += v * v;
  return p / static_cast<double>(x.size());
}

// ---------------------------------------------------------------------------
// 1. Loss gradients against central finite differences.

double WorstRelError(const std::vector<Parameter*>& params,
                     const std::function<double()>& value,
                     const std::function<const Tensor&(Parameter*)>& analytic) {
  double worst = 0.0;
  for (Parameter* p : params) {
    const Tensor ana = analytic(p);
    for (Eigen::Index i = 0; i < p->value.size(); ++i) {
      const double v = p->value.data()[i];
      const double h = 1e-6 * std::max(1.0, std::abs(v));
      p->value.data()[i] = v + h;
      const double up = value();
      p->value.data()[i] = v - h;
      const double dn = value();
      p->value.data()[i] = v;
      const double num = (up - dn) / (2.0 * h);
      const double err =
          std::abs(num - ana.data()[i]) /
          std::max({1.0, std::abs(num), std::abs(ana.data()[i])});
      worst = std::max(worst, err);
    }
  }
  return worst;
}

bool Criterion1(std::string* detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const svkit::AamConfig aam;  // s = 30, m = 0.2
  double worst = 0.0;

  for (unsigned seed : {201, 202, 203}) {
    std::mt19937 rng(seed);
    ParamStore ps(seed);
    Parameter* emb = ps.add("emb", 4, 8, Init::kZeros);
    Parameter* head = ps.add("head.weight", 4, 8, Init::kZeros);
    emb->value = RandomTensor(4, 8, rng);
    head->value = RandomTensor(4, 8, rng);
    std::vector<int> labels(4);
    for (int& l : labels) l = static_cast<int>(rng() % 4);

    auto value = [&]() {
      Graph g;
      return svkit::aam_softmax_loss(g, g.param(emb), labels, head, aam)
          .loss->value(0, 0);
    };
    Graph g;
    svkit::nn::GradMap gm = g.backward(
        svkit::aam_softmax_loss(g, g.param(emb), labels, head, aam).loss);
    worst = std::max(
        worst, WorstRelError({emb, head}, value,
                             [&](Parameter* p) -> const Tensor& {
                               return gm.of(p);
                             }));
  }

  // Full finetuning objective: tape CE gradients plus the analytic anchor
  // and decay terms, against finite differences of the summed scalar.
  std::mt19937 rng(204);
  ParamStore src(1), dst(2);
  Parameter* anchor = src.add("enc.w", 5, 8, Init::kZeros);
  Parameter* w = dst.add("enc.w", 5, 8, Init::kZeros);
  Parameter* head = dst.add("head.weight", 4, 5, Init::kZeros);
  anchor->value = RandomTensor(5, 8, rng);
  w->value = RandomTensor(5, 8, rng);
  head->value = RandomTensor(4, 5, rng);
  const Tensor x = RandomTensor(8, 8, rng);
  std::vector<int> labels(8);
  for (int& l : labels) l = static_cast<int>(rng() % 4);
  std::vector<svkit::WeightPair> pairs = svkit::match_weights(src, dst);
  svkit::FinetuneLossConfig fcfg;
  fcfg.lambda_wt = 0.7;
  fcfg.weight_decay = 1e-3;
  const svkit::AamConfig aam2;

  auto ce_node = [&](Graph& g) {
    Var emb = matmul(g, g.constant(x), transpose(g, g.param(w)));
    return svkit::aam_softmax_loss(g, emb, labels, head, aam2).loss;
  };
  auto total = [&]() {
    Graph g;
    const double ce = ce_node(g)->value(0, 0);
    return svkit::finetune_total_loss(ce, pairs, dst, fcfg).total;
  };
  Graph g;
  svkit::nn::GradMap gm = g.backward(ce_node(g));
  std::unordered_map<const Parameter*, Tensor> grads;
  grads.emplace(w, gm.of(w));
  grads.emplace(head, gm.of(head));
  svkit::add_finetune_grads(pairs, dst, fcfg, grads);
  worst = std::max(worst,
                   WorstRelError({w, head}, total,
                                 [&](Parameter* p) -> const Tensor& {
                                   return grads.at(p);
                                 }));

  const double elapsed = Seconds(t0);
  *detail = Fmt("max rel err %.2e, %.2f s", worst, elapsed);
  return worst <= 1e-4 && elapsed < 5.0;
}

// ---------------------------------------------------------------------------
// 2. Interpolated EER against a brute-force threshold sweep.

double BruteForceEer(const std::vector<double>& targets,
                     const std::vector<double>& nontargets) {
  std::vector<double> thresholds;
  thresholds.insert(thresholds.end(), targets.begin(), targets.end());
  thresholds.insert(thresholds.end(), nontargets.begin(), nontargets.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  double best_gap = 2.0, best_eer = 0.5;
  for (double th : thresholds) {
    double frr = 0.0, far = 0.0;
    for (double t : targets) frr += t < th ? 1.0 : 0.0;
    for (double n : nontargets) far += n >= th ? 1.0 : 0.0;
    frr /= static_cast<double>(targets.size());
    far /= static_cast<double>(nontargets.size());
    const double gap = std::abs(frr - far);
    if (gap < best_gap) {
      best_gap = gap;
      best_eer = 0.5 * (frr + far);
    }
  }
  return best_eer;
}

bool Criterion2(std::string* detail) {
  std::mt19937_64 rng(424242);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> n_dist(100, 400);
    std::normal_distribution<double> tgt(1.0, 1.0), non(0.0, 1.0);
    std::vector<double> targets(n_dist(rng)), nontargets(n_dist(rng));
    for (double& t : targets) t = tgt(rng);
    for (double& n : nontargets) n = non(rng);
    const double got = svkit::compute_eer(targets, nontargets).eer;
    worst = std::max(worst, std::abs(got - BruteForceEer(targets, nontargets)));
  }
  const double separated = svkit::compute_eer({0.9, 0.8}, {0.1, 0.2}).eer;
  const double inverted = svkit::compute_eer({0.1, 0.2}, {0.8, 0.9}).eer;
  *detail = Fmt("max |interp - sweep| %.4f over 50 sets", worst);
  return worst <= 0.005 && separated == 0.0 && inverted == 1.0;
}

// ---------------------------------------------------------------------------
// 3. Published-configuration shapes.

bool Criterion3(std::string* detail) {
  for (const auto& [C, D] : std::vector<std::pair<int, int>>{{1024, 192},
                                                             {2048, 256}}) {
    svkit::ModelConfig cfg;
    cfg.arch = "ecapa";
    cfg.channels = C;
    if (cfg.resolved_embedding_dim() != D) {
      *detail = Fmt("ecapa C=%d resolved dim %d, want %d", C,
                    cfg.resolved_embedding_dim(), D);
      return false;
    }
    auto model = svkit::build_model(cfg, 1);
    auto* ecapa = dynamic_cast<svkit::EcapaModel*>(model.get());
    if (ecapa == nullptr) {
      *detail = "ecapa build did not produce an EcapaModel";
      return false;
    }
    const Parameter* embw = model->params().find("emb.linear.weight");
    if (embw->value.rows() != D || embw->value.cols() != 6 * C) {
      *detail = Fmt("ecapa C=%d embedding map is %ldx%ld, want %dx%d", C,
                    embw->value.rows(), embw->value.cols(), D, 6 * C);
      return false;
    }
    for (int T : {16, 80, 301}) {
      Graph g;
      Var pre = ecapa->frame_features(g, RandomFeatures(T, 80, 50 + T),
                                      Mode::kEval, false);
      if (pre->value.rows() != 3 * C || pre->value.cols() != T) {
        *detail = Fmt("ecapa C=%d T=%d pre-pool map is %ldx%ld", C, T,
                      pre->value.rows(), pre->value.cols());
        return false;
      }
      Graph g2;
      Var e = model->forward(g2, RandomFeatures(T, 80, 60 + T), Mode::kEval);
      if (e->value.rows() != D || e->value.cols() != 1) {
        *detail = Fmt("ecapa C=%d T=%d embedding is %ldx%ld", C, T,
                      e->value.rows(), e->value.cols());
        return false;
      }
    }
  }

  svkit::ModelConfig rcfg;
  rcfg.arch = "resnet34se";
  rcfg.channels = 512;  // stages 64, 128, 256, 512
  if (rcfg.resolved_embedding_dim() != 256) {
    *detail = "resnet c4=512 did not resolve a 256-dim embedding";
    return false;
  }
  auto rmodel = svkit::build_model(rcfg, 2);
  auto* resnet = dynamic_cast<svkit::ResnetModel*>(rmodel.get());
  if (resnet == nullptr) {
    *detail = "resnet34se build did not produce a ResnetModel";
    return false;
  }
  for (int T : {16, 80, 301}) {
    Graph g;
    Var map = resnet->frame_features(g, RandomFeatures(T, 80, 70 + T),
                                     Mode::kEval);
    const Eigen::Index want_t = (T + 7) / 8;
    if (map->value.rows() != 10 * 512 || map->value.cols() != want_t) {
      *detail = Fmt("resnet T=%d final map is %ldx%ld, want %dx%ld", T,
                    map->value.rows(), map->value.cols(), 10 * 512, want_t);
      return false;
    }
  }
  *detail = "ecapa 1024/2048 and resnet34se maps at T in {16, 80, 301}";
  return true;
}

// ---------------------------------------------------------------------------
// 4. Attentive stats pooling permutation invariance.

bool Criterion4(std::string* detail) {
  double worst = 0.0;
  for (bool context : {false, true}) {
    const int C = 24, T = 40;
    ParamStore ps(context ? 5 : 6);
    svkit::nn::AttentiveStatsPool pool(ps, "p", C, 8, context);
    std::mt19937 rng(context ? 71 : 72);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (auto& p : ps.items())
      if (!p->is_buffer)
        for (Eigen::Index i = 0; i < p->value.size(); ++i)
          p->value.data()[i] = 0.3 * dist(rng);
    Tensor x = RandomTensor(C, T, rng);
    Graph g0;
    const Tensor ref = pool.forward(g0, g0.constant(x))->value;
    std::vector<int> perm(T);
    for (int t = 0; t < T; ++t) perm[t] = t;
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      Tensor xp(C, T);
      for (int t = 0; t < T; ++t) xp.col(t) = x.col(perm[t]);
      Graph g;
      const Tensor out = pool.forward(g, g.constant(xp))->value;
      worst = std::max(worst, (out - ref).cwiseAbs().maxCoeff());
    }
  }
  *detail = Fmt("max deviation %.2e over 20 permutations x 2 variants", worst);
  return worst <= 1e-5;
}

// ---------------------------------------------------------------------------
// 5. Toy end-to-end pipeline through the command line.

const char* kToyTrainArgs =
    " --set channels=64 --set embedding_dim=32 --set res2_scale=4"
    " --set att_channels=32 --set se_reduction=8 --set batch_size=16"
    " --set crop_seconds=2.0";

bool Criterion5(std::string* detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = g_work / "c5";

  CliResult r = RunCli("make-toy-corpus --out " + dir.string() + " --seed 7");
  if (r.status != 0) {
    *detail = "make-toy-corpus failed: " + r.out;
    return false;
  }
  r = RunCli("train --manifest " + (dir / "train.tsv").string() + " --out " +
             (dir / "model.ckpt").string() + " --seed 3" + kToyTrainArgs +
             " --set max_steps=800 --set lr_max=2e-3"
             " --set half_cycle_steps=200");
  if (r.status != 0) {
    *detail = "train failed: " + r.out;
    return false;
  }
  const double acc = NumberAfter(r.out, "train accuracy ");

  svkit::write_text_file(
      (dir / "embed_all.tsv").string(),
      svkit::read_text_file((dir / "enroll.tsv").string()) +
          svkit::read_text_file((dir / "test.tsv").string()));
  r = RunCli("embed --model " + (dir / "model.ckpt").string() +
             " --manifest " + (dir / "embed_all.tsv").string() + " --out " +
             (dir / "emb.bin").string());
  if (r.status != 0) {
    *detail = "embed failed: " + r.out;
    return false;
  }
  r = RunCli("score --embeddings " + (dir / "emb.bin").string() +
             " --enroll-manifest " + (dir / "enroll.tsv").string() +
             " --trials " + (dir / "trials.tsv").string() + " --out " +
             (dir / "sys.scores").string());
  if (r.status != 0) {
    *detail = "score failed: " + r.out;
    return false;
  }
  r = RunCli("eval --trials " + (dir / "trials.tsv").string() + " --scores " +
             (dir / "sys.scores").string());
  if (r.status != 0) {
    *detail = "eval failed: " + r.out;
    return false;
  }
  const double eer = NumberAfter(r.out, "EER ") / 100.0;

  // Destroying the speaker structure of the labels sends the same scores
  // to chance level.
  std::vector<svkit::ScoreRow> rows =
      svkit::load_scores((dir / "sys.scores").string());
  std::vector<svkit::Trial> trials =
      svkit::load_trials((dir / "trials.tsv").string());
  std::vector<svkit::TrialLabel> labels;
  for (const auto& t : trials) labels.push_back(*t.label);
  std::mt19937 rng(17);
  std::shuffle(labels.begin(), labels.end(), rng);
  for (size_t i = 0; i < trials.size(); ++i) trials[i].label = labels[i];
  std::vector<double> tgt, non;
  svkit::split_by_label(rows, trials, &tgt, &non);
  const double shuffled = svkit::compute_eer(tgt, non).eer;

  const double elapsed = Seconds(t0);
  *detail = Fmt("train acc %.4f, eer %.3f, shuffled eer %.3f, %.0f s", acc,
                eer, shuffled, elapsed);
  return acc >= 0.95 && eer < 0.20 && shuffled > 0.30 && shuffled < 0.70 &&
         elapsed <= 600.0;
}

// ---------------------------------------------------------------------------
// 6. Weight-transfer versus vanilla finetuning on a domain shift.

double TargetEer(const fs::path& dir, const std::string& ckpt,
                 const std::string& tag, std::string* fail) {
  const fs::path emb = dir / ("emb_" + tag + ".bin");
  const fs::path scores = dir / (tag + ".scores");
  CliResult r = RunCli("embed --model " + ckpt + " --manifest " +
                       (dir / "embed_all.tsv").string() + " --out " +
                       emb.string());
  if (r.status != 0) {
    *fail = "embed failed: " + r.out;
    return std::nan("");
  }
  r = RunCli("score --embeddings " + emb.string() + " --enroll-manifest " +
             (dir / "enroll.tsv").string() + " --trials " +
             (dir / "trials.tsv").string() + " --out " + scores.string());
  if (r.status != 0) {
    *fail = "score failed: " + r.out;
    return std::nan("");
  }
  r = RunCli("eval --trials " + (dir / "trials.tsv").string() + " --scores " +
             scores.string());
  if (r.status != 0) {
    *fail = "eval failed: " + r.out;
    return std::nan("");
  }
  return NumberAfter(r.out, "EER ") / 100.0;
}

// Classification accuracy on the source speakers with the finetuned trunk
// under the source head: the probe for how much the trunk forgot.
double SourceHeadAccuracy(const fs::path& src_ckpt, const fs::path& ft_ckpt,
                          const fs::path& src_dir) {
  svkit::LoadedModel ft = svkit::load_checkpoint(ft_ckpt.string());
  svkit::LoadedModel hybrid = svkit::load_checkpoint(src_ckpt.string());
  svkit::transfer_weights(*ft.model, *hybrid.model);

  std::vector<svkit::TrainUtterance> utts;
  for (const auto& rec :
       svkit::load_manifest((src_dir / "train.tsv").string())) {
    svkit::TrainUtterance u;
    u.utt_id = rec.utt_id;
    u.speaker_id = rec.speaker_id;
    u.wav = svkit::read_wav((src_dir / rec.path).string());
    utts.push_back(std::move(u));
  }
  svkit::TrainSet data(std::move(utts), 1);
  return svkit::train_accuracy(*hybrid.model, data, svkit::FeatureConfig{});
}

bool Criterion6(std::string* detail) {
  const fs::path src_dir = g_work / "c5";
  const fs::path dir = g_work / "c6";
  const std::string source = (src_dir / "model.ckpt").string();
  if (!fs::exists(source)) {
    *detail = "missing the pre-trained source model (criterion 5 corpus)";
    return false;
  }

  CliResult r = RunCli("make-toy-corpus --out " + dir.string() +
                       " --seed 7 --set toy_profile=shifted");
  if (r.status != 0) {
    *detail = "make-toy-corpus failed: " + r.out;
    return false;
  }
  svkit::write_text_file(
      (dir / "embed_all.tsv").string(),
      svkit::read_text_file((dir / "enroll.tsv").string()) +
          svkit::read_text_file((dir / "test.tsv").string()));

  const std::string common =
      " --manifest " + (dir / "train.tsv").string() + " --seed 5" +
      kToyTrainArgs +
      " --set max_steps=300 --set lr_max=1e-3 --set half_cycle_steps=100"
      " --set lambda_wt=2.0 --source " + source;
  r = RunCli("finetune --mode weight-transfer --out " +
             (dir / "ft_wt.ckpt").string() + common);
  if (r.status != 0) {
    *detail = "weight-transfer finetune failed: " + r.out;
    return false;
  }
  const double wt_anchor = NumberAfter(r.out, "anchor distance ");
  r = RunCli("finetune --mode vanilla --out " + (dir / "ft_van.ckpt").string() +
             common);
  if (r.status != 0) {
    *detail = "vanilla finetune failed: " + r.out;
    return false;
  }
  const double van_anchor = NumberAfter(r.out, "anchor distance ");

  std::string fail;
  const double eer_frozen = TargetEer(dir, source, "frozen", &fail);
  const double eer_wt =
      TargetEer(dir, (dir / "ft_wt.ckpt").string(), "wt", &fail);
  const double eer_van =
      TargetEer(dir, (dir / "ft_van.ckpt").string(), "van", &fail);
  if (!fail.empty()) {
    *detail = fail;
    return false;
  }

  const double acc_wt =
      SourceHeadAccuracy(src_dir / "model.ckpt", dir / "ft_wt.ckpt", src_dir);
  const double acc_van =
      SourceHeadAccuracy(src_dir / "model.ckpt", dir / "ft_van.ckpt", src_dir);

  *detail = Fmt(
      "anchor %.3f vs %.3f, source acc %.4f vs %.4f, "
      "target eer %.3f/%.3f vs frozen %.3f",
      wt_anchor, van_anchor, acc_wt, acc_van, eer_wt, eer_van, eer_frozen);
  return wt_anchor < van_anchor && acc_wt >= acc_van &&
         eer_wt < eer_frozen && eer_van < eer_frozen;
}

// ---------------------------------------------------------------------------
// 7. Score fusion.

bool Criterion7(std::string* detail) {
  std::mt19937 rng(77);
  std::normal_distribution<double> noise(0.0, 0.9);
  const int n = 240;
  std::vector<svkit::ScoreRow> a, b;
  std::vector<double> ta, na, tb, nb, tf, nf;
  for (int i = 0; i < n; ++i) {
    const bool target = i % 4 == 0;
    const double truth = target ? 1.0 : -1.0;
    const std::string tid = Fmt("t%03d", i);
    const double sa = truth + noise(rng);
    const double sb = truth + noise(rng);
    a.push_back({"e", tid, sa});
    b.push_back({"e", tid, sb});
    (target ? ta : na).push_back(sa);
    (target ? tb : nb).push_back(sb);
  }
  std::vector<svkit::ScoreRow> fused = svkit::fuse_scores({a, b});
  for (int i = 0; i < n; ++i)
    (i % 4 == 0 ? tf : nf).push_back(fused[static_cast<size_t>(i)].score);
  const double eer_a = svkit::compute_eer(ta, na).eer;
  const double eer_b = svkit::compute_eer(tb, nb).eer;
  const double eer_f = svkit::compute_eer(tf, nf).eer;

  // Self-fusion through the command line is the identity on the file.
  const fs::path sa = g_work / "a.scores";
  const fs::path saa = g_work / "aa.scores";
  svkit::write_scores(a, sa.string());
  CliResult r =
      RunCli("fuse " + sa.string() + " " + sa.string() + " --out " +
             saa.string());
  if (r.status != 0) {
    *detail = "fuse failed: " + r.out;
    return false;
  }
  const bool self_identity =
      svkit::load_scores(saa.string()) == svkit::load_scores(sa.string());

  *detail = Fmt("eer fused %.3f vs singles %.3f/%.3f, self-fusion %s", eer_f,
                eer_a, eer_b, self_identity ? "exact" : "differs");
  return eer_f <= std::min(eer_a, eer_b) && self_identity;
}

// ---------------------------------------------------------------------------
// 8. triangular2 anchor values.

bool Criterion8(std::string* detail) {
  svkit::LrSchedule s;
  s.lr_min = 1e-8;
  s.lr_max = 1e-3;
  s.half_cycle_steps = 400;
  const double mid = s.lr_min + 0.5 * (s.lr_max - s.lr_min);
  double worst = 0.0;
  worst = std::max(worst, std::abs(svkit::triangular2_lr(s, 0) - s.lr_min));
  worst = std::max(worst, std::abs(svkit::triangular2_lr(s, 400) - s.lr_max));
  worst = std::max(worst, std::abs(svkit::triangular2_lr(s, 800) - s.lr_min));
  worst = std::max(worst, std::abs(svkit::triangular2_lr(s, 1200) - mid));
  *detail = Fmt("max anchor error %.2e", worst);
  return worst <= 1e-12;
}

// ---------------------------------------------------------------------------
// 9. On-disk format round-trips and corruption rejection.

bool Criterion9(std::string* detail) {
  // Embedding store: bit-exact floats through the binary format.
  svkit::EmbeddingStore store(6);
  std::mt19937 rng(99);
  std::uniform_real_distribution<float> dist(-10.0f, 10.0f);
  for (int i = 0; i < 40; ++i) {
    std::vector<float> v(6);
    for (float& x : v) x = dist(rng);
    v[0] = 0.0f;
    v[1] = -1.1754944e-38f;
    store.insert(Fmt("utt%02d", i), std::move(v));
  }
  const fs::path emb_path = g_work / "round.bin";
  svkit::save_embeddings(store, emb_path.string());
  svkit::EmbeddingStore back = svkit::load_embeddings(emb_path.string());
  bool bit_exact = back.dim() == store.dim() && back.size() == store.size();
  for (size_t i = 0; bit_exact && i < store.entries().size(); ++i) {
    const auto& [id, vec] = store.entries()[i];
    const auto& [bid, bvec] = back.entries()[i];
    bit_exact = id == bid &&
                std::memcmp(vec.data(), bvec.data(),
                            vec.size() * sizeof(float)) == 0;
  }

  // Scores: text format accurate to 1e-6.
  std::vector<svkit::ScoreRow> rows;
  std::uniform_real_distribution<double> sdist(-1.0, 1.0);
  for (int i = 0; i < 100; ++i)
    rows.push_back({"e" + std::to_string(i % 7), Fmt("t%03d", i), sdist(rng)});
  const fs::path sc_path = g_work / "round.scores";
  svkit::write_scores(rows, sc_path.string());
  std::vector<svkit::ScoreRow> srows = svkit::load_scores(sc_path.string());
  double worst_score = 1.0;
  if (srows.size() == rows.size()) {
    worst_score = 0.0;
    for (size_t i = 0; i < rows.size(); ++i)
      worst_score =
          std::max(worst_score, std::abs(rows[i].score - srows[i].score));
  }

  // Truncation and corruption must be rejected with located messages.
  bool located = true;
  {
    std::error_code ec;
    const auto full = fs::file_size(emb_path, ec);
    fs::resize_file(emb_path, full / 2, ec);
    try {
      svkit::load_embeddings(emb_path.string());
      located = false;
    } catch (const svkit::FormatError& e) {
      located = located && std::string(e.what()).find("truncated") !=
                               std::string::npos;
    }
  }
  try {
    svkit::parse_scores("e1 t1 0.5\ne2 t2 not-a-number\n");
    located = false;
  } catch (const svkit::FormatError& e) {
    located =
        located && std::string(e.what()).find("line 2") != std::string::npos;
  }

  *detail = Fmt("embeddings %s, score error %.1e, corrupt inputs %s",
                bit_exact ? "bit-exact" : "mismatch", worst_score,
                located ? "located" : "unlocated");
  return bit_exact && worst_score <= 1e-6 && located;
}

// ---------------------------------------------------------------------------
// 10. Augmentation contracts.

bool Criterion10(std::string* detail) {
  const int rate = 16000;
  svkit::Waveform sig;
  sig.sample_rate = rate;
  sig.samples.resize(rate);
  for (int i = 0; i < rate; ++i)
    sig.samples[i] = 0.4 * std::sin(2.0 * M_PI * 440.0 * i / rate);

  const svkit::NoiseBank bank = svkit::NoiseBank::synthetic(5, rate);
  double worst_snr = 0.0;
  for (double snr : {0.0, 5.0, 15.0}) {
    const svkit::Waveform noisy =
        svkit::add_noise_at(sig, bank.noise[0], snr, 123);
    std::vector<double> added(sig.samples.size());
    for (size_t i = 0; i < added.size(); ++i)
      added[i] = noisy.samples[i] - sig.samples[i];
    const double measured =
        10.0 * std::log10(SignalPower(sig.samples) / SignalPower(added));
    worst_snr = std::max(worst_snr, std::abs(measured - snr));
  }

  svkit::Waveform unit;
  unit.sample_rate = rate;
  unit.samples = {1.0};
  const svkit::Waveform echoed = svkit::add_reverb(sig, unit);
  double worst_reverb = 0.0;
  for (size_t i = 0; i < sig.samples.size(); ++i)
    worst_reverb =
        std::max(worst_reverb, std::abs(echoed.samples[i] - sig.samples[i]));

  bool lengths_ok = true;
  for (double f : {0.9, 1.0, 1.1}) {
    const svkit::Waveform sp = svkit::speed_perturb(sig, f);
    const auto want = std::llround(static_cast<double>(rate) / f);
    lengths_ok = lengths_ok && std::llabs(sp.size() - want) <= 1;
  }

  bool specaug_ok = true;
  const svkit::SpecAugPolicy pol;
  const svkit::FeatureMatrix f = RandomFeatures(120, 80, 7);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10 && specaug_ok; ++trial) {
    svkit::SpecAugTrace trace;
    const svkit::FeatureMatrix out = svkit::spec_augment(f, pol, rng, &trace);
    specaug_ok = out.rows() == 120 && out.cols() == 80;
    for (const auto& [start, width] : trace.time_masks)
      specaug_ok = specaug_ok && start >= 0 && width >= 0 &&
                   width <= pol.max_time_mask_frames && start + width <= 120;
    for (const auto& [start, width] : trace.freq_masks)
      specaug_ok = specaug_ok && start >= 0 && width >= 0 &&
                   width <= pol.max_freq_mask_bins && start + width <= 80;
  }

  *detail = Fmt("snr err %.3f dB, reverb err %.1e, lengths %s, specaug %s",
                worst_snr, worst_reverb, lengths_ok ? "ok" : "off",
                specaug_ok ? "in-bound" : "out-of-bound");
  return worst_snr <= 0.1 && worst_reverb <= 1e-6 && lengths_ok && specaug_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-svkit-binary>\n");
    return 2;
  }
  g_cli = argv[1];
  char tmpl[] = "/tmp/svkit_accept_XXXXXX";
  if (mkdtemp(tmpl) == nullptr) {
    std::fprintf(stderr, "cannot create a work directory\n");
    return 2;
  }
  g_work = tmpl;

  struct Entry {
    const char* label;
    bool (*fn)(std::string*);
  };
  const Entry entries[] = {
      {"loss gradients vs central differences", Criterion1},
      {"EER matches the brute-force sweep", Criterion2},
      {"published model configuration shapes", Criterion3},
      {"pooling permutation invariance", Criterion4},
      {"toy corpus end-to-end pipeline", Criterion5},
      {"weight transfer vs vanilla finetuning", Criterion6},
      {"score fusion dominance and identity", Criterion7},
      {"triangular2 schedule anchors", Criterion8},
      {"format round-trips and corruption checks", Criterion9},
      {"augmentation contracts", Criterion10},
  };

  int failures = 0;
  for (int i = 0; i < 10; ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = entries[i].fn(&detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                entries[i].label, detail.empty() ? "" : " | ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  std::error_code ec;
  fs::remove_all(g_work, ec);
  if (failures > 0) std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
