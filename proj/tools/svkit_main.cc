// tools/svkit_main.cc

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

#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svkit/cli/run_config.h"
#include "svkit/io/embedding_store.h"
#include "svkit/io/manifest.h"
#include "svkit/io/score_file.h"
#include "svkit/io/wav.h"
#include "svkit/models/checkpoint.h"
#include "svkit/models/embed.h"
#include "svkit/scoring/scoring.h"
#include "svkit/train/toy.h"
#include "svkit/train/trainer.h"

namespace svkit {
namespace {

// Flag values shared by every subcommand. Precedence, lowest to highest:
// built-in defaults, --config file, --set pairs, dedicated flags.
struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
};

void AddCommon(CLI::App* cmd, CommonOpts* opts, bool out_required = true) {
  cmd->add_option("--config", opts->config_path,
                  "run configuration file (key = value lines)");
  cmd->add_option("--set", opts->sets,
                  "override one config key, e.g. --set max_steps=500");
  cmd->add_option("--seed", opts->seed, "master random seed")
      ->each([opts](const std::string&) { opts->seed_given = true; });
  CLI::Option* out =
      cmd->add_option("--out", opts->out, "output artifact path");
  if (out_required) out->required();
}

RunConfig ResolveConfig(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty())
    cfg = RunConfig::from_text(read_text_file(opts.config_path));
  for (const std::string& kv : opts.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got " + kv);
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    const auto trim = [](std::string& s) {
      const size_t a = s.find_first_not_of(" \t");
      const size_t b = s.find_last_not_of(" \t");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(value);
    cfg.set(key, value);
  }
  if (opts.seed_given) cfg.seed = opts.seed;
  cfg.validate();
  return cfg;
}

void WriteEcho(const std::string& artifact, const RunConfig& cfg) {
  write_text_file(artifact + ".config", cfg.to_text());
}

std::string DirOf(const std::string& path) {
  const size_t s = path.find_last_of('/');
  return s == std::string::npos ? std::string(".") : path.substr(0, s);
}

std::string ResolveAgainst(const std::string& manifest_path,
                           const std::string& wav_path) {
  if (!wav_path.empty() && wav_path.front() == '/') return wav_path;
  return DirOf(manifest_path) + "/" + wav_path;
}

TrainSet LoadTrainSet(const std::string& manifest_path, uint64_t seed) {
  std::vector<TrainUtterance> utts;
  for (const UtteranceRecord& rec : load_manifest(manifest_path)) {
    TrainUtterance u;
    u.utt_id = rec.utt_id;
    u.speaker_id = rec.speaker_id;
    u.wav = read_wav(ResolveAgainst(manifest_path, rec.path));
    utts.push_back(std::move(u));
  }
  return TrainSet(std::move(utts), seed);
}

std::vector<float> ToFloats(const Eigen::VectorXd& v) {
  std::vector<float> out(static_cast<size_t>(v.size()));
  for (long i = 0; i < v.size(); ++i)
    out[static_cast<size_t>(i)] = static_cast<float>(v(i));
  return out;
}

Eigen::VectorXd ToVector(const std::vector<float>& v) {
  Eigen::VectorXd out(static_cast<long>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    out[static_cast<long>(i)] = static_cast<double>(v[i]);
  return out;
}

void WriteTrace(const std::string& path, const TrainResult& result) {
  std::ostringstream out;
  out << "# step lr loss ce wt batch_accuracy\n";
  char buf[160];
  for (const StepStats& st : result.trace) {
    std::snprintf(buf, sizeof(buf), "%ld %.9e %.9e %.9e %.9e %.4f\n", st.step,
                  st.lr, st.loss, st.ce, st.wt, st.accuracy);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# final_train_accuracy %.4f\n",
                result.final_accuracy);
  out << buf;
  write_text_file(path, out.str());
}

struct AugmentSetup {
  bool enabled = false;
  AugmentPolicy policy;
  NoiseBank bank;
};

AugmentSetup MakeAugment(const RunConfig& cfg) {
  AugmentSetup setup;
  if (cfg.augment_p <= 0.0) return setup;
  setup.enabled = true;
  setup.policy.p_each = cfg.augment_p;
  if (!cfg.noise_dir.empty() || !cfg.rir_dir.empty())
    setup.bank = NoiseBank::from_dirs(cfg.noise_dir, cfg.rir_dir);
  else
    setup.bank = NoiseBank::synthetic(cfg.seed, cfg.feat.sample_rate);
  return setup;
}

int RunTrain(const CommonOpts& opts, const std::string& manifest) {
  RunConfig cfg = ResolveConfig(opts);
  TrainSet data = LoadTrainSet(manifest, cfg.seed);
  ModelConfig mc = cfg.model;
  mc.n_speakers = data.n_speakers();
  std::unique_ptr<SpeakerEncoder> model = build_model(mc, cfg.seed);
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  AamConfig aam{cfg.aam_scale, cfg.aam_margin};
  Trainer trainer(*model, data, tc, cfg.feat, aam);
  AugmentSetup aug = MakeAugment(cfg);
  if (aug.enabled) trainer.enable_augmentation(aug.policy, &aug.bank);
  const TrainResult result = trainer.train();
  save_checkpoint(opts.out, *model, static_cast<uint32_t>(tc.max_steps),
                  data.speakers());
  WriteTrace(opts.out + ".trace", result);
  WriteEcho(opts.out, cfg);
  std::printf("trained %ld steps on %d speakers, train accuracy %.4f\n",
              tc.max_steps, data.n_speakers(), result.final_accuracy);
  return 0;
}

int RunFinetune(const CommonOpts& opts, const std::string& manifest,
                const std::string& source_path, const std::string& mode_flag) {
  RunConfig cfg = ResolveConfig(opts);
  std::string mode = cfg.finetune_mode;
  if (!mode_flag.empty())
    mode = mode_flag == "weight-transfer" ? "weight_transfer" : mode_flag;
  LoadedModel source = load_checkpoint(source_path);
  TrainSet data = LoadTrainSet(manifest, cfg.seed);
  std::unique_ptr<SpeakerEncoder> model =
      init_finetune_model(*source.model, data.n_speakers(), cfg.seed);
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  AamConfig aam{cfg.aam_scale, cfg.aam_margin};
  Trainer trainer(*model, data, tc, cfg.feat, aam);
  AugmentSetup aug = MakeAugment(cfg);
  if (aug.enabled) trainer.enable_augmentation(aug.policy, &aug.bank);
  FinetuneConfig fc;
  fc.mode = mode;
  fc.lambda_wt = cfg.lambda_wt;
  const TrainResult result = trainer.finetune(*source.model, fc);
  save_checkpoint(opts.out, *model, static_cast<uint32_t>(tc.max_steps),
                  data.speakers());
  WriteTrace(opts.out + ".trace", result);
  WriteEcho(opts.out, cfg);
  std::printf(
      "finetuned %ld steps (%s) on %d speakers, train accuracy %.4f, "
      "anchor distance %.6f\n",
      tc.max_steps, mode.c_str(), data.n_speakers(), result.final_accuracy,
      result.trace.empty() ? 0.0 : result.trace.back().wt);
  return 0;
}

int RunEmbed(const CommonOpts& opts, const std::string& manifest,
             const std::string& model_path) {
  const RunConfig cfg = ResolveConfig(opts);
  LoadedModel lm = load_checkpoint(model_path);
  EmbeddingStore store(lm.model->embedding_dim());
  for (const UtteranceRecord& rec : load_manifest(manifest)) {
    const Waveform w = read_wav(ResolveAgainst(manifest, rec.path));
    store.insert(rec.utt_id, ToFloats(embed_utterance(*lm.model, w, cfg.feat)));
  }
  save_embeddings(store, opts.out);
  WriteEcho(opts.out, cfg);
  std::printf("embedded %zu utterances at dim %d\n", store.size(),
              store.dim());
  return 0;
}

int RunScore(const CommonOpts& opts, const std::string& trials_path,
             const std::string& embeddings_path,
             const std::string& enroll_manifest) {
  const RunConfig cfg = ResolveConfig(opts);
  const std::vector<Trial> trials = load_trials(trials_path);
  const EmbeddingStore store = load_embeddings(embeddings_path);

  std::map<std::string, std::vector<Eigen::VectorXd>> by_speaker;
  for (const UtteranceRecord& rec : load_manifest(enroll_manifest)) {
    const std::vector<float>* v = store.find(rec.utt_id);
    if (v == nullptr)
      throw InputError("no embedding for enrollment utterance " + rec.utt_id);
    by_speaker[rec.speaker_id].push_back(ToVector(*v));
  }
  std::map<std::string, EnrollmentModel> enrolled;
  for (const auto& [spk, embs] : by_speaker)
    enrolled.emplace(spk, enroll_speaker(spk, embs));

  std::vector<ScoreRow> rows;
  rows.reserve(trials.size());
  for (const Trial& t : trials) {
    const auto it = enrolled.find(t.enroll_id);
    if (it == enrolled.end())
      throw InputError("trial references unknown enrollment speaker " +
                       t.enroll_id);
    const std::vector<float>* v = store.find(t.test_utt_id);
    if (v == nullptr)
      throw InputError("no embedding for test utterance " + t.test_utt_id);
    rows.push_back({t.enroll_id, t.test_utt_id,
                    cosine_score(it->second.embedding, ToVector(*v))});
  }
  write_scores(rows, opts.out);
  WriteEcho(opts.out, cfg);
  std::printf("scored %zu trials against %zu enrolled speakers\n",
              rows.size(), enrolled.size());
  return 0;
}

int RunFuse(const CommonOpts& opts, const std::vector<std::string>& files,
            const std::vector<double>& weights) {
  const RunConfig cfg = ResolveConfig(opts);
  std::vector<std::vector<ScoreRow>> sets;
  sets.reserve(files.size());
  for (const std::string& f : files) sets.push_back(load_scores(f));
  const std::vector<ScoreRow> fused = fuse_scores(sets, weights);
  write_scores(fused, opts.out);
  WriteEcho(opts.out, cfg);
  std::printf("fused %zu systems over %zu trials\n", sets.size(),
              fused.size());
  return 0;
}

int RunEval(const CommonOpts& opts, const std::string& scores_path,
            const std::string& trials_path, const std::string& det_path) {
  const RunConfig cfg = ResolveConfig(opts);
  const std::vector<ScoreRow> scores = load_scores(scores_path);
  const std::vector<Trial> trials = load_trials(trials_path);
  std::vector<double> target, nontarget;
  split_by_label(scores, trials, &target, &nontarget);
  const EerResult r = compute_eer(target, nontarget);

  char buf[200];
  std::ostringstream report;
  std::snprintf(buf, sizeof(buf), "EER %.3f%%\n", 100.0 * r.eer);
  report << buf;
  std::snprintf(buf, sizeof(buf), "threshold %.6f\n", r.threshold);
  report << buf;
  std::snprintf(buf, sizeof(buf), "target_trials %zu\n", target.size());
  report << buf;
  std::snprintf(buf, sizeof(buf), "nontarget_trials %zu\n", nontarget.size());
  report << buf;
  std::fputs(report.str().c_str(), stdout);

  if (!det_path.empty()) {
    std::ostringstream det;
    det << "# threshold far frr\n";
    for (const DetPoint& p : det_curve(target, nontarget)) {
      std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f\n", p.threshold, p.far,
                    p.frr);
      det << buf;
    }
    write_text_file(det_path, det.str());
  }
  if (!opts.out.empty()) {
    write_text_file(opts.out, report.str());
    WriteEcho(opts.out, cfg);
  }
  return 0;
}

int RunMakeToyCorpus(const CommonOpts& opts, const std::string& profile_flag) {
  RunConfig cfg = ResolveConfig(opts);
  if (!profile_flag.empty()) cfg.toy_profile = profile_flag;
  ToyCorpusConfig tc;
  tc.n_speakers = cfg.toy_speakers;
  tc.utts_per_speaker = cfg.toy_utts;
  tc.utt_seconds = cfg.toy_seconds;
  tc.sample_rate = cfg.feat.sample_rate;
  tc.seed = cfg.seed;
  tc.profile = cfg.toy_profile;
  const std::vector<TrainUtterance> utts = make_toy_corpus(tc);

  namespace fs = std::filesystem;
  fs::create_directories(fs::path(opts.out) / "wav");
  std::vector<UtteranceRecord> train_rows, enroll_rows, test_rows;
  const int per = tc.utts_per_speaker;
  const int eval_n = per >= 5 ? std::max(1, per * 3 / 20) : 0;
  for (const TrainUtterance& u : utts) {
    const std::string rel = "wav/" + u.utt_id + ".wav";
    write_wav((fs::path(opts.out) / rel).string(), u.wav);
    UtteranceRecord rec{u.utt_id, u.speaker_id, rel,
                        u.wav.duration_seconds()};
    // Utterance ids end in the per-speaker index; the last 2*eval_n
    // recordings of each speaker are held out for enrollment and test.
    const int idx =
        std::stoi(u.utt_id.substr(u.utt_id.find_last_of('u') + 1));
    if (idx >= per - eval_n)
      test_rows.push_back(rec);
    else if (idx >= per - 2 * eval_n)
      enroll_rows.push_back(rec);
    else
      train_rows.push_back(rec);
  }
  write_text_file((fs::path(opts.out) / "train.tsv").string(),
                  write_manifest(train_rows));
  if (eval_n > 0) {
    write_text_file((fs::path(opts.out) / "enroll.tsv").string(),
                    write_manifest(enroll_rows));
    write_text_file((fs::path(opts.out) / "test.tsv").string(),
                    write_manifest(test_rows));
    std::vector<std::string> speakers;
    for (const UtteranceRecord& rec : enroll_rows)
      if (speakers.empty() || speakers.back() != rec.speaker_id)
        speakers.push_back(rec.speaker_id);
    std::vector<Trial> trials;
    for (const std::string& spk : speakers)
      for (const UtteranceRecord& rec : test_rows)
        trials.push_back({spk, rec.utt_id,
                          spk == rec.speaker_id ? TrialLabel::kTarget
                                                : TrialLabel::kNontarget});
    write_text_file((fs::path(opts.out) / "trials.tsv").string(),
                    write_trials(trials));
  }
  write_text_file((fs::path(opts.out) / "run.config").string(),
                  cfg.to_text());
  std::printf("wrote %zu utterances for %d speakers under %s\n", utts.size(),
              tc.n_speakers, opts.out.c_str());
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"svkit: speaker verification toolkit"};
  app.require_subcommand(1);

  CommonOpts train_opts;
  std::string train_manifest;
  CLI::App* train_cmd =
      app.add_subcommand("train", "pretrain a speaker embedding model");
  train_cmd->add_option("--manifest", train_manifest, "training manifest")
      ->required();
  AddCommon(train_cmd, &train_opts);

  CommonOpts ft_opts;
  std::string ft_manifest, ft_source, ft_mode;
  CLI::App* ft_cmd =
      app.add_subcommand("finetune", "adapt a pretrained model to a domain");
  ft_cmd->add_option("--manifest", ft_manifest, "target-domain manifest")
      ->required();
  ft_cmd->add_option("--source", ft_source, "pretrained source checkpoint")
      ->required();
  ft_cmd->add_option("--mode", ft_mode, "vanilla or weight-transfer")
      ->check(CLI::IsMember({"vanilla", "weight-transfer"}));
  AddCommon(ft_cmd, &ft_opts);

  CommonOpts embed_opts;
  std::string embed_manifest, embed_model;
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "extract embeddings for a manifest");
  embed_cmd->add_option("--manifest", embed_manifest, "utterance manifest")
      ->required();
  embed_cmd->add_option("--model", embed_model, "model checkpoint")
      ->required();
  AddCommon(embed_cmd, &embed_opts);

  CommonOpts score_opts;
  std::string score_trials, score_embeddings, score_enroll;
  CLI::App* score_cmd = app.add_subcommand(
      "score", "cosine-score trials with enrollment averaging");
  score_cmd->add_option("--trials", score_trials, "trial list")->required();
  score_cmd
      ->add_option("--embeddings", score_embeddings,
                   "embedding store covering enrollment and test utterances")
      ->required();
  score_cmd
      ->add_option("--enroll-manifest", score_enroll,
                   "manifest mapping enrollment utterances to speakers")
      ->required();
  AddCommon(score_cmd, &score_opts);

  CommonOpts fuse_opts;
  std::vector<std::string> fuse_files;
  std::vector<double> fuse_weights;
  CLI::App* fuse_cmd =
      app.add_subcommand("fuse", "average two or more score files");
  fuse_cmd->add_option("scores", fuse_files, "score files (at least two)")
      ->required();
  fuse_cmd->add_option("--weight", fuse_weights,
                       "per-system fusion weight, repeatable");
  AddCommon(fuse_cmd, &fuse_opts);

  CommonOpts eval_opts;
  std::string eval_scores, eval_trials, eval_det;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "equal error rate of a score file");
  eval_cmd->add_option("--scores", eval_scores, "score file")->required();
  eval_cmd->add_option("--trials", eval_trials, "labeled trial list")
      ->required();
  eval_cmd->add_option("--det", eval_det, "write DET curve points here");
  AddCommon(eval_cmd, &eval_opts, /*out_required=*/false);

  CommonOpts toy_opts;
  std::string toy_profile;
  CLI::App* toy_cmd = app.add_subcommand(
      "make-toy-corpus", "synthesize a deterministic toy corpus");
  toy_cmd->add_option("--profile", toy_profile, "base or shifted")
      ->check(CLI::IsMember({"base", "shifted"}));
  AddCommon(toy_cmd, &toy_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (train_cmd->parsed()) return RunTrain(train_opts, train_manifest);
    if (ft_cmd->parsed())
      return RunFinetune(ft_opts, ft_manifest, ft_source, ft_mode);
    if (embed_cmd->parsed())
      return RunEmbed(embed_opts, embed_manifest, embed_model);
    if (score_cmd->parsed())
      return RunScore(score_opts, score_trials, score_embeddings,
                      score_enroll);
    if (fuse_cmd->parsed()) {
      if (fuse_files.size() < 2) {
        std::fprintf(stderr, "fuse needs at least two score files\n");
        return 2;
      }
      return RunFuse(fuse_opts, fuse_files, fuse_weights);
    }
    if (eval_cmd->parsed())
      return RunEval(eval_opts, eval_scores, eval_trials, eval_det);
    if (toy_cmd->parsed()) return RunMakeToyCorpus(toy_opts, toy_profile);
  } catch (const FormatError& e) {
    std::fprintf(stderr, "ERROR: %s\n", e.what());
    return 1;
  } catch (const InputError& e) {
    std::fprintf(stderr, "ERROR: %s\n", e.what());
    return 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "ERROR: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ERROR: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace svkit

int main(int argc, char** argv) { return svkit::Main(argc, argv); }
