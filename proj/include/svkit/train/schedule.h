// svkit/train/schedule.h

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

#ifndef SVKIT_TRAIN_SCHEDULE_H_
#define SVKIT_TRAIN_SCHEDULE_H_

#include "svkit/common.h"

namespace svkit {

struct LrSchedule {
  double lr_min = 1e-8;
  double lr_max = 1e-3;
  long half_cycle_steps = 1000;

  // ConfigError unless 0 < lr_min <= lr_max and half_cycle_steps >= 1.
  void validate() const;
};

// Cyclic triangular rate with the amplitude halved every full cycle:
//   cycle = floor(step / (2 * half)),
//   x     = |step / half - 2 * cycle - 1|,
//   lr    = lr_min + (lr_max - lr_min) * max(0, 1 - x) / 2^cycle.
// The rate is lr_min at step 0, lr_max at step half, lr_min again at
// 2 * half, and the peaks decay geometrically. Negative steps raise
// InputError.
double triangular2_lr(const LrSchedule& s, long step);

}  // namespace svkit

#endif  // SVKIT_TRAIN_SCHEDULE_H_
