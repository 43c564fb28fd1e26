// svkit/cli/run_config.cc

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

#include "svkit/cli/run_config.h"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "svkit/losses/aam.h"

namespace svkit {

namespace {

std::string Trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long ParseLong(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("invalid integer for " + key + ": " + v);
  return x;
}

int ParseInt(const std::string& key, const std::string& v) {
  return static_cast<int>(ParseLong(key, v));
}

uint64_t ParseU64(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("invalid integer for " + key + ": " + v);
  return x;
}

double ParseF64(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("invalid number for " + key + ": " + v);
  return x;
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "seed") {
    seed = ParseU64(key, value);
  } else if (key == "sample_rate") {
    feat.sample_rate = ParseInt(key, value);
  } else if (key == "win_ms") {
    feat.win_ms = ParseF64(key, value);
  } else if (key == "hop_ms") {
    feat.hop_ms = ParseF64(key, value);
  } else if (key == "n_mels") {
    feat.n_mels = ParseInt(key, value);
    model.n_mels = feat.n_mels;
  } else if (key == "fft_size") {
    feat.fft_size = ParseInt(key, value);
  } else if (key == "f_min") {
    feat.f_min = ParseF64(key, value);
  } else if (key == "f_max") {
    feat.f_max = ParseF64(key, value);
  } else if (key == "log_floor") {
    feat.log_floor = ParseF64(key, value);
  } else if (key == "arch") {
    model.arch = value;
  } else if (key == "channels") {
    model.channels = ParseInt(key, value);
  } else if (key == "embedding_dim") {
    model.embedding_dim = ParseInt(key, value);
  } else if (key == "res2_scale") {
    model.res2_scale = ParseInt(key, value);
  } else if (key == "se_reduction") {
    model.se_reduction = ParseInt(key, value);
  } else if (key == "att_channels") {
    model.att_channels = ParseInt(key, value);
  } else if (key == "lr_min") {
    train.lr_min = ParseF64(key, value);
  } else if (key == "lr_max") {
    train.lr_max = ParseF64(key, value);
  } else if (key == "half_cycle_steps") {
    train.half_cycle_steps = ParseLong(key, value);
  } else if (key == "batch_size") {
    train.batch_size = ParseInt(key, value);
  } else if (key == "crop_seconds") {
    train.crop_seconds = ParseF64(key, value);
  } else if (key == "max_steps") {
    train.max_steps = ParseLong(key, value);
  } else if (key == "weight_decay") {
    train.weight_decay = ParseF64(key, value);
  } else if (key == "adam_beta1") {
    train.adam.beta1 = ParseF64(key, value);
  } else if (key == "adam_beta2") {
    train.adam.beta2 = ParseF64(key, value);
  } else if (key == "adam_eps") {
    train.adam.eps = ParseF64(key, value);
  } else if (key == "finetune_mode") {
    finetune_mode = value;
  } else if (key == "lambda_wt") {
    lambda_wt = ParseF64(key, value);
  } else if (key == "aam_scale") {
    aam_scale = ParseF64(key, value);
  } else if (key == "aam_margin") {
    aam_margin = ParseF64(key, value);
  } else if (key == "augment_p") {
    augment_p = ParseF64(key, value);
  } else if (key == "noise_dir") {
    noise_dir = value;
  } else if (key == "rir_dir") {
    rir_dir = value;
  } else if (key == "enroll_min_s") {
    enroll_min_s = ParseF64(key, value);
  } else if (key == "enroll_max_s") {
    enroll_max_s = ParseF64(key, value);
  } else if (key == "toy_speakers") {
    toy_speakers = ParseInt(key, value);
  } else if (key == "toy_utts") {
    toy_utts = ParseInt(key, value);
  } else if (key == "toy_seconds") {
    toy_seconds = ParseF64(key, value);
  } else if (key == "toy_profile") {
    toy_profile = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not key = value: " + t);
    cfg.set(Trim(t.substr(0, eq)), Trim(t.substr(eq + 1)));
  }
  return cfg;
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  out << "seed = " << seed << "\n";
  out << "sample_rate = " << feat.sample_rate << "\n";
  out << "win_ms = " << Num(feat.win_ms) << "\n";
  out << "hop_ms = " << Num(feat.hop_ms) << "\n";
  out << "n_mels = " << feat.n_mels << "\n";
  out << "fft_size = " << feat.fft_size << "\n";
  out << "f_min = " << Num(feat.f_min) << "\n";
  out << "f_max = " << Num(feat.f_max) << "\n";
  out << "log_floor = " << Num(feat.log_floor) << "\n";
  out << "arch = " << model.arch << "\n";
  out << "channels = " << model.channels << "\n";
  out << "embedding_dim = " << model.embedding_dim << "\n";
  out << "res2_scale = " << model.res2_scale << "\n";
  out << "se_reduction = " << model.se_reduction << "\n";
  out << "att_channels = " << model.att_channels << "\n";
  out << "lr_min = " << Num(train.lr_min) << "\n";
  out << "lr_max = " << Num(train.lr_max) << "\n";
  out << "half_cycle_steps = " << train.half_cycle_steps << "\n";
  out << "batch_size = " << train.batch_size << "\n";
  out << "crop_seconds = " << Num(train.crop_seconds) << "\n";
  out << "max_steps = " << train.max_steps << "\n";
  out << "weight_decay = " << Num(train.weight_decay) << "\n";
  out << "adam_beta1 = " << Num(train.adam.beta1) << "\n";
  out << "adam_beta2 = " << Num(train.adam.beta2) << "\n";
  out << "adam_eps = " << Num(train.adam.eps) << "\n";
  out << "finetune_mode = " << finetune_mode << "\n";
  out << "lambda_wt = " << Num(lambda_wt) << "\n";
  out << "aam_scale = " << Num(aam_scale) << "\n";
  out << "aam_margin = " << Num(aam_margin) << "\n";
  out << "augment_p = " << Num(augment_p) << "\n";
  out << "noise_dir = " << noise_dir << "\n";
  out << "rir_dir = " << rir_dir << "\n";
  out << "enroll_min_s = " << Num(enroll_min_s) << "\n";
  out << "enroll_max_s = " << Num(enroll_max_s) << "\n";
  out << "toy_speakers = " << toy_speakers << "\n";
  out << "toy_utts = " << toy_utts << "\n";
  out << "toy_seconds = " << Num(toy_seconds) << "\n";
  out << "toy_profile = " << toy_profile << "\n";
  return out.str();
}

void RunConfig::validate() const {
  feat.validate();
  model.validate();
  TrainConfig tc = train;
  tc.seed = seed;
  tc.validate();
  FinetuneConfig fc;
  fc.mode = finetune_mode;
  fc.lambda_wt = lambda_wt;
  fc.validate();
  AamConfig aam;
  aam.scale = aam_scale;
  aam.margin = aam_margin;
  aam.validate();
  if (!(augment_p >= 0.0) || augment_p > 1.0)
    throw ConfigError("augment_p must lie in [0, 1]");
  if (!(enroll_min_s > 0.0) || !(enroll_max_s >= enroll_min_s))
    throw ConfigError("enrollment segment bounds must satisfy 0 < min <= max");
  ToyCorpusConfig toy;
  toy.n_speakers = toy_speakers;
  toy.utts_per_speaker = toy_utts;
  toy.utt_seconds = toy_seconds;
  toy.sample_rate = feat.sample_rate;
  toy.profile = toy_profile;
  toy.validate();
  if (model.n_mels != feat.n_mels)
    throw ConfigError("model and feature mel widths disagree");
}

}  // namespace svkit
