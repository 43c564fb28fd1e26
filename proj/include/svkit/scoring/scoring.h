// svkit/scoring/scoring.h

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

#ifndef SVKIT_SCORING_SCORING_H_
#define SVKIT_SCORING_SCORING_H_

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "svkit/common.h"
#include "svkit/io/manifest.h"
#include "svkit/io/score_file.h"

namespace svkit {

// A speaker's reference: the unit-norm average of its enrollment
// embeddings.
struct EnrollmentModel {
  std::string speaker_id;
  Eigen::VectorXd embedding;
  int n_segments = 1;
};

struct EerResult {
  double eer = 0.0;        // fraction in [0, 1]
  double threshold = 0.0;  // score at the crossing
};

// One ROC operating point with the accept-at-or-above convention.
struct DetPoint {
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

// Cuts w into consecutive segments whose lengths are drawn uniformly from
// [min_s, max_s] seconds; a trailing remainder shorter than min_s merges
// into the final segment, so the segments concatenate back to exactly w.
// A recording shorter than min_s comes back as a single segment.
std::vector<Waveform> segment_enrollment(const Waveform& w,
                                         std::mt19937_64& rng,
                                         double min_s = 10.0,
                                         double max_s = 60.0);

// L2-normalizes every embedding, averages, and renormalizes. InputError
// on an empty list, mixed dims, or a zero vector (input or mean).
EnrollmentModel enroll_speaker(const std::string& speaker_id,
                               const std::vector<Eigen::VectorXd>& embs);

// a.b / (|a||b|), clamped to [-1, 1]. InputError on zero vectors or
// mismatched dims.
double cosine_score(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Per-trial weighted mean across systems. All sets must cover the same
// trial keys; the first set's order is kept. Empty weights mean uniform;
// otherwise one nonnegative weight per set, not all zero.
std::vector<ScoreRow> fuse_scores(
    const std::vector<std::vector<ScoreRow>>& sets,
    const std::vector<double>& weights = {});

// Equal error rate by linear interpolation between adjacent ROC operating
// points. InputError unless both classes are nonempty and finite.
EerResult compute_eer(const std::vector<double>& target_scores,
                      const std::vector<double>& nontarget_scores);

// The full ROC ladder over the distinct scores, threshold ascending.
std::vector<DetPoint> det_curve(const std::vector<double>& target_scores,
                                const std::vector<double>& nontarget_scores);

// Joins scores with labeled trials by (enroll_id, test_utt_id). InputError
// on an unlabeled trial or a key present on one side only.
void split_by_label(const std::vector<ScoreRow>& scores,
                    const std::vector<Trial>& trials,
                    std::vector<double>* target_scores,
                    std::vector<double>* nontarget_scores);

}  // namespace svkit

#endif  // SVKIT_SCORING_SCORING_H_
