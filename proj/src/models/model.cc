// svkit/models/model.cc

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

#include "svkit/models/model.h"

#include <sstream>

#include "svkit/models/ecapa.h"
#include "svkit/models/resnet.h"

namespace svkit {

void ModelConfig::validate() const {
  if (arch != "ecapa" && arch != "resnet34se")
    throw ConfigError("unknown arch: " + arch);
  if (n_mels <= 0) throw ConfigError("n_mels must be positive");
  if (channels <= 0) throw ConfigError("channels must be positive");
  if (embedding_dim < 0) throw ConfigError("embedding_dim must be >= 0");
  if (att_channels <= 0) throw ConfigError("att_channels must be positive");
  if (se_reduction <= 0) throw ConfigError("se_reduction must be positive");
  if (n_speakers < 0) throw ConfigError("n_speakers must be >= 0");
  if (arch == "ecapa") {
    if (res2_scale < 2) throw ConfigError("res2_scale must be >= 2");
    if (channels % res2_scale != 0)
      throw ConfigError("channels must be a multiple of res2_scale");
  } else {
    if (channels % 8 != 0)
      throw ConfigError("resnet34se channels must be a multiple of 8");
    if (n_mels < 8) throw ConfigError("resnet34se needs n_mels >= 8");
  }
}

int ModelConfig::resolved_embedding_dim() const {
  if (embedding_dim > 0) return embedding_dim;
  if (arch == "ecapa") return channels == 2048 ? 256 : 192;
  return channels == 512 ? 256 : 192;
}

std::string ModelConfig::to_text() const {
  std::ostringstream out;
  out << "arch = " << arch << "\n";
  out << "n_mels = " << n_mels << "\n";
  out << "channels = " << channels << "\n";
  out << "embedding_dim = " << embedding_dim << "\n";
  out << "res2_scale = " << res2_scale << "\n";
  out << "se_reduction = " << se_reduction << "\n";
  out << "att_channels = " << att_channels << "\n";
  out << "n_speakers = " << n_speakers << "\n";
  return out.str();
}

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int ParseInt(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw FormatError("model config: bad integer for " + key + ": '" + value +
                      "'");
  }
}

}  // namespace

ModelConfig ModelConfig::from_text(const std::string& text) {
  ModelConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw FormatError("model config: expected 'key = value', got '" + t +
                        "'");
    const std::string key = Trim(t.substr(0, eq));
    const std::string value = Trim(t.substr(eq + 1));
    if (key == "arch")
      cfg.arch = value;
    else if (key == "n_mels")
      cfg.n_mels = ParseInt(key, value);
    else if (key == "channels")
      cfg.channels = ParseInt(key, value);
    else if (key == "embedding_dim")
      cfg.embedding_dim = ParseInt(key, value);
    else if (key == "res2_scale")
      cfg.res2_scale = ParseInt(key, value);
    else if (key == "se_reduction")
      cfg.se_reduction = ParseInt(key, value);
    else if (key == "att_channels")
      cfg.att_channels = ParseInt(key, value);
    else if (key == "n_speakers")
      cfg.n_speakers = ParseInt(key, value);
    else
      throw FormatError("model config: unknown key '" + key + "'");
  }
  return cfg;
}

bool ModelConfig::operator==(const ModelConfig& o) const {
  return arch == o.arch && n_mels == o.n_mels && channels == o.channels &&
         embedding_dim == o.embedding_dim && res2_scale == o.res2_scale &&
         se_reduction == o.se_reduction && att_channels == o.att_channels &&
         n_speakers == o.n_speakers;
}

SpeakerEncoder::SpeakerEncoder(const ModelConfig& cfg, uint64_t seed)
    : cfg_(cfg), params_(std::make_unique<nn::ParamStore>(seed)) {
  if (cfg_.n_speakers > 0) {
    head_ = params_->add("head.weight", cfg_.n_speakers,
                         cfg_.resolved_embedding_dim(), nn::Init::kFanInNormal);
    for (Eigen::Index r = 0; r < head_->value.rows(); ++r)
      head_->value.row(r).normalize();
  }
}

std::unique_ptr<SpeakerEncoder> build_model(const ModelConfig& cfg,
                                            uint64_t seed) {
  cfg.validate();
  if (cfg.arch == "ecapa") return std::make_unique<EcapaModel>(cfg, seed);
  return std::make_unique<ResnetModel>(cfg, seed);
}

}  // namespace svkit
