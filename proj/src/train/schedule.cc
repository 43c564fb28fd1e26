// svkit/train/schedule.cc

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

#include "svkit/train/schedule.h"

#include <algorithm>
#include <cmath>

namespace svkit {

void LrSchedule::validate() const {
  if (!(lr_min > 0.0) || !(lr_max >= lr_min))
    throw ConfigError("learning rates must satisfy 0 < lr_min <= lr_max");
  if (half_cycle_steps < 1)
    throw ConfigError("half_cycle_steps must be at least 1");
}

double triangular2_lr(const LrSchedule& s, long step) {
  s.validate();
  if (step < 0) throw InputError("schedule step must be nonnegative");
  const long cycle = step / (2 * s.half_cycle_steps);
  const double x = std::abs(static_cast<double>(step) / s.half_cycle_steps -
                            2.0 * cycle - 1.0);
  const double tri = std::max(0.0, 1.0 - x);
  return s.lr_min + (s.lr_max - s.lr_min) *
                        std::ldexp(tri, -static_cast<int>(
                                            std::min<long>(cycle, 1000)));
}

}  // namespace svkit
