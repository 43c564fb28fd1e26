// tests/test_scoring.cc

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
#include <random>
#include <vector>

#include "doctest.h"
#include "svkit/scoring/scoring.h"

using svkit::EerResult;
using svkit::EnrollmentModel;
using svkit::InputError;
using svkit::ScoreRow;
using svkit::Trial;
using svkit::TrialLabel;
using svkit::Waveform;

namespace {

Waveform Ramp(size_t n) {
  Waveform w;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    w.samples[i] = std::sin(0.001 * static_cast<double>(i));
  return w;
}

// Reference EER: evaluate FAR/FRR at every distinct score and take the
// point where they come closest.
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

}  // namespace

TEST_CASE("segmentation returns a short recording whole") {
  Waveform w = Ramp(8 * 16000);
  std::mt19937_64 rng(1);
  std::vector<Waveform> segs = svkit::segment_enrollment(w, rng);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].samples == w.samples);
}

TEST_CASE("segmentation covers the input exactly with in-range pieces") {
  Waveform w = Ramp(120 * 16000);
  std::mt19937_64 rng(77);
  std::vector<Waveform> segs = svkit::segment_enrollment(w, rng);
  CHECK(segs.size() >= 2);
  std::vector<double> glued;
  for (const Waveform& s : segs) {
    CHECK(s.samples.size() >= 10 * 16000);
    // 60 s cap plus a merged tail of up to 10 s.
    CHECK(s.samples.size() < 70 * 16000);
    glued.insert(glued.end(), s.samples.begin(), s.samples.end());
  }
  CHECK(glued == w.samples);
}

TEST_CASE("segmentation with min == max follows the merge rule") {
  Waveform w = Ramp(35 * 16000);
  std::mt19937_64 rng(5);
  std::vector<Waveform> segs =
      svkit::segment_enrollment(w, rng, 10.0, 10.0);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].samples.size() == 10 * 16000);
  CHECK(segs[1].samples.size() == 10 * 16000);
  CHECK(segs[2].samples.size() == 15 * 16000);
  Waveform empty;
  CHECK_THROWS_AS(svkit::segment_enrollment(empty, rng), InputError);
}

TEST_CASE("enrollment averaging normalizes before and after") {
  Eigen::VectorXd v(3);
  v << 3.0, 0.0, 4.0;
  EnrollmentModel single = svkit::enroll_speaker("spk", {v});
  CHECK(single.n_segments == 1);
  CHECK((single.embedding - v / 5.0).cwiseAbs().maxCoeff() < 1e-12);

  EnrollmentModel twice = svkit::enroll_speaker("spk", {v, v});
  CHECK(twice.n_segments == 2);
  CHECK((twice.embedding - v / 5.0).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3), e2 = Eigen::VectorXd::Zero(3);
  e1(0) = 1.0;
  e2(1) = 1.0;
  EnrollmentModel ortho = svkit::enroll_speaker("spk", {e1, e2});
  CHECK(ortho.embedding(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(ortho.embedding(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(ortho.embedding(2) == 0.0);

  CHECK_THROWS_AS(svkit::enroll_speaker("spk", {}), InputError);
  CHECK_THROWS_AS(
      svkit::enroll_speaker("spk", {v, Eigen::VectorXd::Zero(3)}),
      InputError);
  Eigen::VectorXd other(2);
  other << 1.0, 0.0;
  CHECK_THROWS_AS(svkit::enroll_speaker("spk", {v, other}), InputError);
  CHECK_THROWS_AS(svkit::enroll_speaker("spk", {e1, -e1}), InputError);
}

TEST_CASE("cosine score closed forms and properties") {
  Eigen::VectorXd v(2), x(2), y(2), z(2);
  v << 0.3, -0.7;
  x << 1.0, 0.0;
  y << 0.0, 1.0;
  z << 1.0, 1.0;
  CHECK(svkit::cosine_score(v, v) == 1.0);
  CHECK(svkit::cosine_score(x, y) == 0.0);
  CHECK(svkit::cosine_score(z, x) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(svkit::cosine_score(v, x) == svkit::cosine_score(x, v));
  CHECK(std::abs(svkit::cosine_score(v, x) -
                 svkit::cosine_score(123.0 * v, x)) <= 1e-6);
  CHECK(svkit::cosine_score(v, -v) == -1.0);
  CHECK_THROWS_AS(svkit::cosine_score(Eigen::VectorXd::Zero(2), x),
                  InputError);
  Eigen::VectorXd w3(3);
  w3 << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(svkit::cosine_score(v, w3), InputError);
}

TEST_CASE("fusion identities, means, and key checking") {
  std::vector<ScoreRow> a = {{"e1", "t1", 0.2}, {"e2", "t2", -0.5}};
  std::vector<ScoreRow> b = {{"e2", "t2", 0.1}, {"e1", "t1", 0.6}};

  CHECK(svkit::fuse_scores({a}) == a);
  CHECK(svkit::fuse_scores({a, a}) == a);

  std::vector<ScoreRow> fused = svkit::fuse_scores({a, b});
  REQUIRE(fused.size() == 2);
  CHECK(fused[0].enroll_id == "e1");  // first set's order kept
  CHECK(fused[0].score == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(fused[1].score == doctest::Approx(-0.2).epsilon(1e-12));

  std::vector<ScoreRow> flipped = svkit::fuse_scores({b, a});
  CHECK(flipped[1].score == doctest::Approx(fused[0].score).epsilon(1e-12));

  std::vector<ScoreRow> weighted = svkit::fuse_scores({a, b}, {1.0, 3.0});
  CHECK(weighted[0].score == doctest::Approx(0.25 * 0.2 + 0.75 * 0.6));

  std::vector<ScoreRow> c = {{"e1", "t1", 0.2}, {"eX", "tX", 0.0}};
  CHECK_THROWS_WITH_AS(svkit::fuse_scores({a, c}),
                       "fusion: trial e2 t2 missing from set 2", InputError);
  std::vector<ScoreRow> shorter = {{"e1", "t1", 0.2}};
  CHECK_THROWS_AS(svkit::fuse_scores({a, shorter}), InputError);
  CHECK_THROWS_AS(svkit::fuse_scores({a, b}, {0.0, 0.0}), InputError);
  CHECK_THROWS_AS(svkit::fuse_scores({a, b}, {1.0, -1.0}), InputError);
  CHECK_THROWS_AS(svkit::fuse_scores({a, b}, {1.0}), InputError);
}

TEST_CASE("EER hits the exact endpoints on separated and inverted scores") {
  EerResult sep = svkit::compute_eer({0.9, 0.8}, {0.1, 0.2});
  CHECK(sep.eer == 0.0);
  CHECK(sep.threshold > 0.2);
  CHECK(sep.threshold <= 0.8);
  EerResult inv = svkit::compute_eer({0.1, 0.2}, {0.8, 0.9});
  CHECK(inv.eer == 1.0);
}

TEST_CASE("EER matches the brute-force sweep on random score sets") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> n_dist(100, 400);
    std::normal_distribution<double> tgt(1.0, 1.0), non(0.0, 1.0);
    std::vector<double> targets(n_dist(rng)), nontargets(n_dist(rng));
    for (double& t : targets) t = tgt(rng);
    for (double& n : nontargets) n = non(rng);
    const EerResult got = svkit::compute_eer(targets, nontargets);
    const double oracle = BruteForceEer(targets, nontargets);
    CHECK(std::abs(got.eer - oracle) <= 0.005);
    CHECK(got.eer >= 0.0);
    CHECK(got.eer <= 1.0);
  }
}

TEST_CASE("EER is invariant under increasing monotone transforms") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> tgt(0.8, 0.5), non(0.0, 0.5);
  std::vector<double> targets(150), nontargets(200);
  for (double& t : targets) t = tgt(rng);
  for (double& n : nontargets) n = non(rng);
  const double base = svkit::compute_eer(targets, nontargets).eer;
  auto mapped = [&](double (*f)(double)) {
    std::vector<double> t2 = targets, n2 = nontargets;
    for (double& x : t2) x = f(x);
    for (double& x : n2) x = f(x);
    return svkit::compute_eer(t2, n2).eer;
  };
  CHECK(std::abs(mapped([](double x) { return 2.0 * x + 1.0; }) - base) <=
        1e-9);
  CHECK(std::abs(mapped([](double x) { return std::tanh(x); }) - base) <=
        1e-9);
  CHECK(std::abs(mapped([](double x) { return x * x * x; }) - base) <= 1e-9);
}

TEST_CASE("EER input validation") {
  CHECK_THROWS_AS(svkit::compute_eer({}, {0.0}), InputError);
  CHECK_THROWS_AS(svkit::compute_eer({0.0}, {}), InputError);
  CHECK_THROWS_AS(svkit::compute_eer({std::nan("")}, {0.0}), InputError);
}

TEST_CASE("DET curve brackets the EER operating point") {
  std::vector<double> targets = {0.9, 0.7, 0.5};
  std::vector<double> nontargets = {0.1, 0.4, 0.6};
  std::vector<svkit::DetPoint> det = svkit::det_curve(targets, nontargets);
  REQUIRE(det.size() >= 2);
  CHECK(det.front().far == 1.0);
  CHECK(det.front().frr == 0.0);
  CHECK(det.back().far == 0.0);
  CHECK(det.back().frr == 1.0);
  for (size_t i = 1; i < det.size(); ++i) {
    CHECK(det[i].threshold > det[i - 1].threshold);
    CHECK(det[i].far <= det[i - 1].far);
    CHECK(det[i].frr >= det[i - 1].frr);
  }
}

TEST_CASE("label join routes scores and rejects gaps") {
  std::vector<ScoreRow> scores = {{"e1", "t1", 0.9}, {"e1", "t2", 0.1}};
  std::vector<Trial> trials = {
      {"e1", "t1", TrialLabel::kTarget},
      {"e1", "t2", TrialLabel::kNontarget},
  };
  std::vector<double> targets, nontargets;
  svkit::split_by_label(scores, trials, &targets, &nontargets);
  CHECK(targets == std::vector<double>{0.9});
  CHECK(nontargets == std::vector<double>{0.1});

  std::vector<Trial> unlabeled = {{"e1", "t1", std::nullopt}};
  CHECK_THROWS_AS(
      svkit::split_by_label(scores, unlabeled, &targets, &nontargets),
      InputError);
  std::vector<Trial> short_list = {{"e1", "t1", TrialLabel::kTarget}};
  CHECK_THROWS_AS(
      svkit::split_by_label(scores, short_list, &targets, &nontargets),
      InputError);
  std::vector<ScoreRow> short_scores = {{"e1", "t1", 0.9}};
  CHECK_THROWS_AS(
      svkit::split_by_label(short_scores, trials, &targets, &nontargets),
      InputError);
}
