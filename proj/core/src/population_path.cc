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

#include "mfg/population_path.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mfg/errors.h"

namespace mfg {

PopulationPath::PopulationPath(TimeGrid grid, int n_states,
                               std::vector<double> values)
    : grid_(grid), n_states_(n_states), values_(std::move(values)) {
  const std::size_t expected =
      static_cast<std::size_t>(grid_.steps() + 1) * n_states_;
  if (values_.size() != expected) {
    throw ValidationError("population path has " +
                          std::to_string(values_.size()) +
                          " values, expected " + std::to_string(expected));
  }
}

void PopulationPath::Interpolate(double t, std::span<double> out) const {
  const int k = grid_.IntervalAt(t);
  const double t0 = grid_.time(k);
  const double w = std::clamp((t - t0) / grid_.step(), 0.0, 1.0);
  auto a = At(k);
  auto b = At(k + 1);
  for (int j = 0; j < n_states_; ++j) out[j] = (1.0 - w) * a[j] + w * b[j];
}

double PopulationPath::SupDistance(const PopulationPath& other) const {
  if (!(grid_ == other.grid_) || n_states_ != other.n_states_) {
    throw GridError("cannot compare paths on different grids");
  }
  double d = 0.0;
  for (std::size_t r = 0; r < values_.size(); ++r) {
    d = std::max(d, std::abs(values_[r] - other.values_[r]));
  }
  return d;
}

void ProjectToSimplex(std::span<double> m, ProjectionStats& stats) {
  double negative = 0.0;
  double raw_sum = 0.0;
  double sum = 0.0;
  for (double& v : m) {
    raw_sum += v;
    if (v < 0.0) {
      negative -= v;
      v = 0.0;
    }
    sum += v;
  }
  stats.max_negative_mass = std::max(stats.max_negative_mass, negative);
  stats.max_mass_drift = std::max(stats.max_mass_drift, std::abs(raw_sum - 1.0));
  if (sum > 0.0) {
    for (double& v : m) v /= sum;
  }
}

}  // namespace mfg
