// src/pybind/module.cc

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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "svkit/augment/augment.h"
#include "svkit/common.h"
#include "svkit/feat/fbank.h"
#include "svkit/io/embedding_store.h"
#include "svkit/io/manifest.h"
#include "svkit/io/score_file.h"
#include "svkit/io/wav.h"
#include "svkit/models/checkpoint.h"
#include "svkit/models/embed.h"
#include "svkit/models/model.h"
#include "svkit/scoring/scoring.h"
#include "svkit/train/dataset.h"
#include "svkit/train/schedule.h"
#include "svkit/train/toy.h"

namespace py = pybind11;

PYBIND11_MODULE(_svkit, m) {
  m.doc() = "speaker verification toolkit";

  py::register_exception<svkit::FormatError>(m, "FormatError",
                                             PyExc_ValueError);
  py::register_exception<svkit::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<svkit::ConfigError>(m, "ConfigError",
                                             PyExc_ValueError);

  // ---- audio ----
  py::class_<svkit::Waveform>(m, "Waveform")
      .def(py::init<>())
      .def(py::init([](std::vector<double> samples, int sample_rate) {
             svkit::Waveform w;
             w.samples = std::move(samples);
             w.sample_rate = sample_rate;
             return w;
           }),
           py::arg("samples"), py::arg("sample_rate") = 16000)
      .def_readwrite("samples", &svkit::Waveform::samples)
      .def_readwrite("sample_rate", &svkit::Waveform::sample_rate)
      .def("duration_seconds", &svkit::Waveform::duration_seconds)
      .def("__len__",
           [](const svkit::Waveform& w) { return w.samples.size(); });

  m.def("read_wav", &svkit::read_wav, py::arg("path"));
  m.def("write_wav", &svkit::write_wav, py::arg("path"), py::arg("waveform"));

  // ---- features ----
  py::class_<svkit::FeatureConfig>(m, "FeatureConfig")
      .def(py::init<>())
      .def_readwrite("sample_rate", &svkit::FeatureConfig::sample_rate)
      .def_readwrite("win_ms", &svkit::FeatureConfig::win_ms)
      .def_readwrite("hop_ms", &svkit::FeatureConfig::hop_ms)
      .def_readwrite("n_mels", &svkit::FeatureConfig::n_mels)
      .def_readwrite("fft_size", &svkit::FeatureConfig::fft_size)
      .def_readwrite("f_min", &svkit::FeatureConfig::f_min)
      .def_readwrite("f_max", &svkit::FeatureConfig::f_max)
      .def_readwrite("log_floor", &svkit::FeatureConfig::log_floor)
      .def("validate", &svkit::FeatureConfig::validate);

  m.def("mel_filterbank", &svkit::mel_filterbank, py::arg("config"));
  m.def("compute_log_mel", &svkit::compute_log_mel, py::arg("waveform"),
        py::arg("config") = svkit::FeatureConfig{});
  m.def("mean_normalize", &svkit::mean_normalize, py::arg("features"));

  // ---- models ----
  py::class_<svkit::ModelConfig>(m, "ModelConfig")
      .def(py::init<>())
      .def_readwrite("arch", &svkit::ModelConfig::arch)
      .def_readwrite("n_mels", &svkit::ModelConfig::n_mels)
      .def_readwrite("channels", &svkit::ModelConfig::channels)
      .def_readwrite("embedding_dim", &svkit::ModelConfig::embedding_dim)
      .def_readwrite("res2_scale", &svkit::ModelConfig::res2_scale)
      .def_readwrite("se_reduction", &svkit::ModelConfig::se_reduction)
      .def_readwrite("att_channels", &svkit::ModelConfig::att_channels)
      .def_readwrite("n_speakers", &svkit::ModelConfig::n_speakers)
      .def("validate", &svkit::ModelConfig::validate)
      .def("resolved_embedding_dim",
           &svkit::ModelConfig::resolved_embedding_dim);

  py::class_<svkit::SpeakerEncoder>(m, "Model")
      .def_property_readonly("config", &svkit::SpeakerEncoder::config)
      .def_property_readonly("embedding_dim",
                             &svkit::SpeakerEncoder::embedding_dim)
      .def("embed",
           [](svkit::SpeakerEncoder& self, const svkit::Waveform& w,
              const svkit::FeatureConfig& feat) {
             return svkit::embed_utterance(self, w, feat);
           },
           py::arg("waveform"), py::arg("config") = svkit::FeatureConfig{});

  m.def("build_model", &svkit::build_model, py::arg("config"),
        py::arg("seed"));
  m.def("save_checkpoint", &svkit::save_checkpoint, py::arg("path"),
        py::arg("model"), py::arg("step") = 0,
        py::arg("speakers") = std::vector<std::string>{});
  m.def(
      "load_checkpoint",
      [](const std::string& path) {
        svkit::LoadedModel lm = svkit::load_checkpoint(path);
        return py::make_tuple(std::move(lm.model), lm.step, lm.speakers);
      },
      py::arg("path"), "Returns (model, step, speakers).");

  // ---- scoring ----
  py::class_<svkit::EerResult>(m, "EerResult")
      .def_readonly("eer", &svkit::EerResult::eer)
      .def_readonly("threshold", &svkit::EerResult::threshold)
      .def("__repr__", [](const svkit::EerResult& r) {
        return "EerResult(eer=" + std::to_string(r.eer) +
               ", threshold=" + std::to_string(r.threshold) + ")";
      });

  py::class_<svkit::ScoreRow>(m, "ScoreRow")
      .def(py::init([](std::string e, std::string t, double s) {
             return svkit::ScoreRow{std::move(e), std::move(t), s};
           }),
           py::arg("enroll_id"), py::arg("test_utt_id"), py::arg("score"))
      .def_readwrite("enroll_id", &svkit::ScoreRow::enroll_id)
      .def_readwrite("test_utt_id", &svkit::ScoreRow::test_utt_id)
      .def_readwrite("score", &svkit::ScoreRow::score)
      .def("__eq__", [](const svkit::ScoreRow& a, const svkit::ScoreRow& b) {
        return a == b;
      });

  m.def("cosine_score", &svkit::cosine_score, py::arg("a"), py::arg("b"));
  m.def(
      "enroll_speaker",
      [](const std::string& speaker_id,
         const std::vector<Eigen::VectorXd>& embs) {
        return svkit::enroll_speaker(speaker_id, embs).embedding;
      },
      py::arg("speaker_id"), py::arg("embeddings"));
  m.def("fuse_scores", &svkit::fuse_scores, py::arg("sets"),
        py::arg("weights") = std::vector<double>{});
  m.def("compute_eer", &svkit::compute_eer, py::arg("target_scores"),
        py::arg("nontarget_scores"));
  m.def(
      "det_curve",
      [](const std::vector<double>& t, const std::vector<double>& n) {
        std::vector<std::tuple<double, double, double>> pts;
        for (const svkit::DetPoint& p : svkit::det_curve(t, n))
          pts.emplace_back(p.threshold, p.far, p.frr);
        return pts;
      },
      py::arg("target_scores"), py::arg("nontarget_scores"),
      "Returns (threshold, far, frr) triples, threshold ascending.");

  m.def("write_scores", &svkit::write_scores, py::arg("rows"),
        py::arg("path"));
  m.def("load_scores", &svkit::load_scores, py::arg("path"));

  // ---- embedding store ----
  py::class_<svkit::EmbeddingStore>(m, "EmbeddingStore")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &svkit::EmbeddingStore::dim)
      .def("__len__", &svkit::EmbeddingStore::size)
      .def("insert", &svkit::EmbeddingStore::insert, py::arg("id"),
           py::arg("vector"))
      .def(
          "find",
          [](const svkit::EmbeddingStore& s,
             const std::string& id) -> py::object {
            const std::vector<float>* v = s.find(id);
            return v == nullptr ? py::none() : py::cast(*v);
          },
          py::arg("id"))
      .def_property_readonly("entries", &svkit::EmbeddingStore::entries)
      .def("__eq__", [](const svkit::EmbeddingStore& a,
                        const svkit::EmbeddingStore& b) { return a == b; });

  m.def("save_embeddings", &svkit::save_embeddings, py::arg("store"),
        py::arg("path"));
  m.def("load_embeddings", &svkit::load_embeddings, py::arg("path"));

  // ---- manifests and trials ----
  py::class_<svkit::UtteranceRecord>(m, "UtteranceRecord")
      .def_readwrite("utt_id", &svkit::UtteranceRecord::utt_id)
      .def_readwrite("speaker_id", &svkit::UtteranceRecord::speaker_id)
      .def_readwrite("path", &svkit::UtteranceRecord::path)
      .def_readwrite("duration_s", &svkit::UtteranceRecord::duration_s);

  py::class_<svkit::Trial>(m, "Trial")
      .def_readwrite("enroll_id", &svkit::Trial::enroll_id)
      .def_readwrite("test_utt_id", &svkit::Trial::test_utt_id)
      .def_property_readonly("label", [](const svkit::Trial& t) -> py::object {
        if (!t.label.has_value()) return py::none();
        return py::cast(*t.label == svkit::TrialLabel::kTarget ? "target"
                                                               : "nontarget");
      });

  m.def("load_manifest", &svkit::load_manifest, py::arg("path"));
  m.def("load_trials", &svkit::load_trials, py::arg("path"));
  m.def(
      "split_by_label",
      [](const std::vector<svkit::ScoreRow>& scores,
         const std::vector<svkit::Trial>& trials) {
        std::vector<double> t, n;
        svkit::split_by_label(scores, trials, &t, &n);
        return py::make_tuple(t, n);
      },
      py::arg("scores"), py::arg("trials"),
      "Returns (target_scores, nontarget_scores).");

  // ---- augmentation ----
  m.def(
      "add_noise",
      [](const svkit::Waveform& w, const svkit::Waveform& noise,
         double snr_db, uint64_t seed) {
        std::mt19937_64 rng(seed);
        return svkit::add_noise(w, noise, snr_db, rng);
      },
      py::arg("waveform"), py::arg("noise"), py::arg("snr_db"),
      py::arg("seed") = 0);
  m.def("add_reverb", &svkit::add_reverb, py::arg("waveform"), py::arg("rir"));
  m.def("speed_perturb", &svkit::speed_perturb, py::arg("waveform"),
        py::arg("factor"));

  // ---- schedule ----
  py::class_<svkit::LrSchedule>(m, "LrSchedule")
      .def(py::init<>())
      .def_readwrite("lr_min", &svkit::LrSchedule::lr_min)
      .def_readwrite("lr_max", &svkit::LrSchedule::lr_max)
      .def_readwrite("half_cycle_steps", &svkit::LrSchedule::half_cycle_steps)
      .def("validate", &svkit::LrSchedule::validate);

  m.def("triangular2_lr", &svkit::triangular2_lr, py::arg("schedule"),
        py::arg("step"));

  // ---- toy corpus ----
  py::class_<svkit::ToyCorpusConfig>(m, "ToyCorpusConfig")
      .def(py::init<>())
      .def_readwrite("n_speakers", &svkit::ToyCorpusConfig::n_speakers)
      .def_readwrite("utts_per_speaker",
                     &svkit::ToyCorpusConfig::utts_per_speaker)
      .def_readwrite("utt_seconds", &svkit::ToyCorpusConfig::utt_seconds)
      .def_readwrite("sample_rate", &svkit::ToyCorpusConfig::sample_rate)
      .def_readwrite("seed", &svkit::ToyCorpusConfig::seed)
      .def_readwrite("profile", &svkit::ToyCorpusConfig::profile)
      .def("validate", &svkit::ToyCorpusConfig::validate);

  m.def(
      "make_toy_corpus",
      [](const svkit::ToyCorpusConfig& cfg) {
        std::vector<std::tuple<std::string, std::string, svkit::Waveform>> out;
        for (svkit::TrainUtterance& u : svkit::make_toy_corpus(cfg))
          out.emplace_back(u.utt_id, u.speaker_id, std::move(u.wav));
        return out;
      },
      py::arg("config") = svkit::ToyCorpusConfig{},
      "Returns (utt_id, speaker_id, waveform) tuples.");
}
