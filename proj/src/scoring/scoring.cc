// svkit/scoring/scoring.cc

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

#include "svkit/scoring/scoring.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace svkit {

std::vector<Waveform> segment_enrollment(const Waveform& w,
                                         std::mt19937_64& rng, double min_s,
                                         double max_s) {
  if (w.empty()) throw InputError("cannot segment an empty recording");
  if (!(min_s > 0.0) || max_s < min_s)
    throw ConfigError("segment bounds need 0 < min <= max");
  const auto min_n = static_cast<int64_t>(
      std::llround(min_s * w.sample_rate));
  std::uniform_real_distribution<double> seconds(min_s, max_s);
  std::vector<Waveform> segments;
  int64_t pos = 0;
  const auto total = static_cast<int64_t>(w.samples.size());
  while (total - pos >= min_n) {
    int64_t n = std::llround(seconds(rng) * w.sample_rate);
    // A tail shorter than min_s is folded into this final segment.
    if (total - pos - n < min_n) n = total - pos;
    Waveform seg;
    seg.sample_rate = w.sample_rate;
    seg.samples.assign(w.samples.begin() + pos, w.samples.begin() + pos + n);
    segments.push_back(std::move(seg));
    pos += n;
  }
  if (segments.empty()) segments.push_back(w);  // whole short recording
  return segments;
}

EnrollmentModel enroll_speaker(const std::string& speaker_id,
                               const std::vector<Eigen::VectorXd>& embs) {
  if (embs.empty())
    throw InputError("enrollment for " + speaker_id + " has no embeddings");
  const Eigen::Index dim = embs.front().size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const Eigen::VectorXd& e : embs) {
    if (e.size() != dim)
      throw InputError("enrollment embedding dims differ for " + speaker_id);
    const double n = e.norm();
    if (n < 1e-12)
      throw InputError("zero embedding in enrollment for " + speaker_id);
    mean += e / n;
  }
  mean /= static_cast<double>(embs.size());
  const double n = mean.norm();
  if (n < 1e-12)
    throw InputError("enrollment embeddings for " + speaker_id +
                     " cancel out");
  EnrollmentModel model;
  model.speaker_id = speaker_id;
  model.embedding = mean / n;
  model.n_segments = static_cast<int>(embs.size());
  return model;
}

double cosine_score(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size())
    throw InputError("cosine: dims differ (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  const double na = a.norm(), nb = b.norm();
  if (na < 1e-12 || nb < 1e-12)
    throw InputError("cosine: zero vector");
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

std::vector<ScoreRow> fuse_scores(
    const std::vector<std::vector<ScoreRow>>& sets,
    const std::vector<double>& weights) {
  if (sets.empty()) throw InputError("fusion needs at least one score set");
  std::vector<double> w = weights;
  if (w.empty()) w.assign(sets.size(), 1.0);
  if (w.size() != sets.size())
    throw InputError("fusion: " + std::to_string(sets.size()) +
                     " sets but " + std::to_string(w.size()) + " weights");
  double total_w = 0.0;
  for (double x : w) {
    if (x < 0.0 || !std::isfinite(x))
      throw InputError("fusion weights must be nonnegative");
    total_w += x;
  }
  if (total_w <= 0.0) throw InputError("fusion weights must not all be zero");

  using Key = std::pair<std::string, std::string>;
  std::vector<std::map<Key, double>> lookup(sets.size());
  for (size_t i = 1; i < sets.size(); ++i) {
    for (const ScoreRow& row : sets[i])
      if (!lookup[i].emplace(Key(row.enroll_id, row.test_utt_id), row.score)
               .second)
        throw InputError("fusion: duplicate trial " + row.enroll_id + " " +
                         row.test_utt_id + " in set " + std::to_string(i + 1));
    if (lookup[i].size() != sets[0].size())
      throw InputError("fusion: set " + std::to_string(i + 1) + " has " +
                       std::to_string(lookup[i].size()) + " trials, set 1 has " +
                       std::to_string(sets[0].size()));
  }
  std::vector<ScoreRow> fused;
  fused.reserve(sets[0].size());
  std::map<Key, bool> seen;
  for (const ScoreRow& row : sets[0]) {
    if (!seen.emplace(Key(row.enroll_id, row.test_utt_id), true).second)
      throw InputError("fusion: duplicate trial " + row.enroll_id + " " +
                       row.test_utt_id + " in set 1");
    double acc = w[0] * row.score;
    for (size_t i = 1; i < sets.size(); ++i) {
      auto it = lookup[i].find(Key(row.enroll_id, row.test_utt_id));
      if (it == lookup[i].end())
        throw InputError("fusion: trial " + row.enroll_id + " " +
                         row.test_utt_id + " missing from set " +
                         std::to_string(i + 1));
      acc += w[i] * it->second;
    }
    fused.push_back({row.enroll_id, row.test_utt_id, acc / total_w});
  }
  return fused;
}

namespace {

// Operating points at every distinct score, threshold ascending, with the
// accept-at-or-above convention. Ends on the reject-all point.
std::vector<DetPoint> RocLadder(std::vector<double> targets,
                                std::vector<double> nontargets) {
  for (double s : targets)
    if (!std::isfinite(s)) throw InputError("non-finite target score");
  for (double s : nontargets)
    if (!std::isfinite(s)) throw InputError("non-finite nontarget score");
  if (targets.empty() || nontargets.empty())
    throw InputError("EER needs both target and nontarget trials");
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());
  std::vector<double> thresholds;
  thresholds.reserve(targets.size() + nontargets.size() + 1);
  std::merge(targets.begin(), targets.end(), nontargets.begin(),
             nontargets.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(thresholds.back() + 1.0);
  const double nt = static_cast<double>(targets.size());
  const double nn = static_cast<double>(nontargets.size());
  std::vector<DetPoint> points;
  points.reserve(thresholds.size());
  for (double th : thresholds) {
    // rejected targets: score < th; accepted nontargets: score >= th.
    const auto frr_n = std::lower_bound(targets.begin(), targets.end(), th) -
                       targets.begin();
    const auto far_n = nontargets.end() -
                       std::lower_bound(nontargets.begin(), nontargets.end(),
                                        th);
    points.push_back({th, static_cast<double>(far_n) / nn,
                      static_cast<double>(frr_n) / nt});
  }
  return points;
}

}  // namespace

std::vector<DetPoint> det_curve(const std::vector<double>& target_scores,
                                const std::vector<double>& nontarget_scores) {
  return RocLadder(target_scores, nontarget_scores);
}

EerResult compute_eer(const std::vector<double>& target_scores,
                      const std::vector<double>& nontarget_scores) {
  const std::vector<DetPoint> points =
      RocLadder(target_scores, nontarget_scores);
  // diff = frr - far climbs from -1 to +1 as the threshold rises; the EER
  // sits where it crosses zero.
  for (size_t i = 0; i < points.size(); ++i) {
    const double d = points[i].frr - points[i].far;
    if (d < 0.0) continue;
    if (i == 0 || d == 0.0)
      return {points[i].far + 0.5 * d, points[i].threshold};
    const DetPoint& lo = points[i - 1];
    const DetPoint& hi = points[i];
    const double d_lo = lo.frr - lo.far;
    const double alpha = -d_lo / (d - d_lo);
    return {lo.far + alpha * (hi.far - lo.far),
            lo.threshold + alpha * (hi.threshold - lo.threshold)};
  }
  // Unreachable: the reject-all point has diff = 1.
  throw InputError("EER crossing not found");
}

void split_by_label(const std::vector<ScoreRow>& scores,
                    const std::vector<Trial>& trials,
                    std::vector<double>* target_scores,
                    std::vector<double>* nontarget_scores) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, TrialLabel> labels;
  for (const Trial& t : trials) {
    if (!t.label.has_value())
      throw InputError("trial " + t.enroll_id + " " + t.test_utt_id +
                       " has no label");
    labels.emplace(Key(t.enroll_id, t.test_utt_id), *t.label);
  }
  target_scores->clear();
  nontarget_scores->clear();
  size_t matched = 0;
  for (const ScoreRow& row : scores) {
    auto it = labels.find(Key(row.enroll_id, row.test_utt_id));
    if (it == labels.end())
      throw InputError("no trial for scored pair " + row.enroll_id + " " +
                       row.test_utt_id);
    ++matched;
    if (it->second == TrialLabel::kTarget)
      target_scores->push_back(row.score);
    else
      nontarget_scores->push_back(row.score);
  }
  if (matched != labels.size())
    throw InputError("trial list has " + std::to_string(labels.size()) +
                     " pairs but only " + std::to_string(matched) +
                     " were scored");
}

}  // namespace svkit
