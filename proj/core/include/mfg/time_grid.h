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

#ifndef MFG_TIME_GRID_H_
#define MFG_TIME_GRID_H_

namespace mfg {

// Uniform grid 0 = t_0 < t_1 < ... < t_K = t_end with step h = t_end / K.
// In discrete-time games the grid is the integer epochs 0..K (h = 1).
class TimeGrid {
 public:
  // Throws GridError unless t_end > 0 and steps >= 1.
  TimeGrid(double t_end, int steps);

  // Grid of `epochs` unit steps: 0, 1, ..., epochs.
  static TimeGrid Discrete(int epochs);

  double t_end() const { return t_end_; }
  int steps() const { return steps_; }
  double step() const { return step_; }

  // Time of grid point k, 0 <= k <= steps(). The last point is exactly t_end.
  double time(int k) const {
    return k == steps_ ? t_end_ : static_cast<double>(k) * step_;
  }

  // Interval containing t under the left-endpoint convention, clamped to
  // [0, steps() - 1].
  int IntervalAt(double t) const;

  // True when both grids end at the same time and every interval of `coarse`
  // is a union of intervals of this grid.
  bool Refines(const TimeGrid& coarse) const;

  // Number of fine intervals per coarse interval; throws GridError if this
  // grid does not refine `coarse`.
  int RefinementRatio(const TimeGrid& coarse) const;

  bool operator==(const TimeGrid& other) const {
    return steps_ == other.steps_ && t_end_ == other.t_end_;
  }

 private:
  double t_end_;
  int steps_;
  double step_;
};

}  // namespace mfg

#endif  // MFG_TIME_GRID_H_
