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

#ifndef MFG_POPULATION_PATH_H_
#define MFG_POPULATION_PATH_H_

#include <span>
#include <utility>
#include <vector>

#include "mfg/time_grid.h"

namespace mfg {

// Largest corrections applied by the simplex projection while a path was
// produced.
struct ProjectionStats {
  // max over steps of |sum_j m_j - 1| before renormalization.
  double max_mass_drift = 0.0;
  // max over steps of the total negative mass clamped to zero.
  double max_negative_mass = 0.0;
};

// A distribution over E states at every grid point, linearly interpolated in
// between. Used for the population flow m(t) and the tagged player's law x(t).
class PopulationPath {
 public:
  PopulationPath(TimeGrid grid, int n_states, std::vector<double> values);

  const TimeGrid& grid() const { return grid_; }
  int n_states() const { return n_states_; }

  std::span<const double> At(int k) const {
    return {values_.data() + static_cast<std::size_t>(k) * n_states_,
            static_cast<std::size_t>(n_states_)};
  }
  void Interpolate(double t, std::span<double> out) const;

  const std::vector<double>& values() const { return values_; }
  const ProjectionStats& projection() const { return projection_; }
  void set_projection(const ProjectionStats& stats) { projection_ = stats; }

  // Populations at the three inner RK4 stages of interval k (stage 2, 3, 4),
  // recorded by the continuous-time population integrator; empty otherwise.
  bool has_stages() const { return !stages_.empty(); }
  std::span<const double> Stage(int k, int stage) const {
    return {stages_.data() +
                (static_cast<std::size_t>(k) * 3 + (stage - 2)) * n_states_,
            static_cast<std::size_t>(n_states_)};
  }
  void set_stages(std::vector<double> stages) { stages_ = std::move(stages); }

  // sup over grid points of the max-norm distance; grids must match.
  double SupDistance(const PopulationPath& other) const;

 private:
  TimeGrid grid_;
  int n_states_;
  std::vector<double> values_;
  std::vector<double> stages_;
  ProjectionStats projection_;
};

// Clamps negative entries to zero and rescales to unit mass; returns the
// corrections in `stats` (running maxima).
void ProjectToSimplex(std::span<double> m, ProjectionStats& stats);

}  // namespace mfg

#endif  // MFG_POPULATION_PATH_H_
