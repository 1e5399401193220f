// Copyright 2026 The mfgkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mfg/time_grid.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfg/errors.h"

namespace mfg {

TimeGrid::TimeGrid(double t_end, int steps)
    : t_end_(t_end), steps_(steps), step_(t_end / steps) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw GridError("time grid needs a finite t_end > 0, got " +
                    std::to_string(t_end));
  }
  if (steps < 1) {
    throw GridError("time grid needs at least one step, got " +
                    std::to_string(steps));
  }
}

TimeGrid TimeGrid::Discrete(int epochs) {
  return TimeGrid(static_cast<double>(epochs), epochs);
}

int TimeGrid::IntervalAt(double t) const {
  if (t <= 0.0) return 0;
  // Guard against t = k*h landing just below k after the division.
  const double x = t / step_;
  int k = static_cast<int>(std::floor(x));
  if (std::abs(x - std::round(x)) < 1e-9) k = static_cast<int>(std::round(x));
  return std::clamp(k, 0, steps_ - 1);
}

bool TimeGrid::Refines(const TimeGrid& coarse) const {
  if (steps_ % coarse.steps_ != 0) return false;
  return std::abs(t_end_ - coarse.t_end_) <=
         1e-12 * std::max(1.0, std::abs(t_end_));
}

int TimeGrid::RefinementRatio(const TimeGrid& coarse) const {
  if (!Refines(coarse)) {
    throw GridError("grid (t_end=" + std::to_string(t_end_) +
                    ", steps=" + std::to_string(steps_) +
                    ") does not refine grid (t_end=" +
                    std::to_string(coarse.t_end_) +
                    ", steps=" + std::to_string(coarse.steps_) + ")");
  }
  return steps_ / coarse.steps_;
}

}  // namespace mfg
