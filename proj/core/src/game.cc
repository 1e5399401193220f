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

#include "mfg/game.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mfg/errors.h"

namespace mfg {

SimplexField SimplexField::Affine(int n_states, std::vector<double> base,
                                  std::vector<double> slope) {
  SimplexField f;
  f.n_states_ = n_states;
  f.dim_ = static_cast<int>(base.size());
  if (slope.empty()) slope.assign(base.size() * n_states, 0.0);
  if (slope.size() != base.size() * static_cast<std::size_t>(n_states)) {
    throw ValidationError("affine slope has " + std::to_string(slope.size()) +
                          " coefficients, expected " +
                          std::to_string(base.size() * n_states));
  }
  f.base_ = std::move(base);
  f.slope_ = std::move(slope);
  return f;
}

SimplexField SimplexField::FromEvaluator(int n_states, int dim, Evaluator fn) {
  SimplexField f;
  f.n_states_ = n_states;
  f.dim_ = dim;
  f.evaluator_ = std::move(fn);
  return f;
}

void SimplexField::Evaluate(std::span<const double> m,
                            std::span<double> out) const {
  if (evaluator_) {
    evaluator_(m, out);
    return;
  }
  const double* s = slope_.data();
  for (int d = 0; d < dim_; ++d) {
    double v = base_[d];
    for (int k = 0; k < n_states_; ++k) v += s[k] * m[k];
    out[d] = v;
    s += n_states_;
  }
}

std::vector<double> SimplexField::Evaluate(std::span<const double> m) const {
  std::vector<double> out(dim_);
  Evaluate(m, out);
  return out;
}

std::vector<double> SimplexVertex(int n, int k) {
  std::vector<double> e(n, 0.0);
  e[k] = 1.0;
  return e;
}

double MaxAbsCost(const GameSpec& spec) {
  const int n = spec.n_states;
  std::vector<std::vector<double>> points;
  for (int k = 0; k < n; ++k) points.push_back(SimplexVertex(n, k));
  if (!spec.costs.is_affine()) {
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        std::vector<double> mid(n, 0.0);
        mid[k] = mid[l] = 0.5;
        points.push_back(std::move(mid));
      }
    }
  }
  double c_max = 0.0;
  std::vector<double> c(spec.cost_dim());
  for (const auto& m : points) {
    spec.costs.Evaluate(m, c);
    for (double v : c) c_max = std::max(c_max, std::abs(v));
  }
  return c_max;
}

double DiscreteCostWeight(const GameSpec& spec) {
  if (spec.continuous() || !spec.horizon.discounted() ||
      !spec.normalize_discrete_cost) {
    return 1.0;
  }
  return 1.0 - spec.horizon.value;
}

TimeGrid DefaultGrid(const GameSpec& spec, const GridOptions& options) {
  const double c_max = std::max(MaxAbsCost(spec), 1e-300);
  if (!spec.continuous()) {
    if (options.steps > 0) return TimeGrid::Discrete(options.steps);
    if (!spec.horizon.discounted()) {
      return TimeGrid::Discrete(static_cast<int>(spec.horizon.value) + 1);
    }
    const double delta = spec.horizon.value;
    // Smallest K with delta^K c_max / (1 - delta) < tol.
    const double k = std::log(options.discrete_tail_tol * (1.0 - delta) /
                              c_max) /
                     std::log(delta);
    return TimeGrid::Discrete(std::max(1, static_cast<int>(std::floor(k)) + 1));
  }
  double t_end = options.t_end;
  if (t_end <= 0.0) {
    if (spec.horizon.discounted()) {
      const double beta = spec.horizon.value;
      t_end = std::max(std::log(c_max / (beta * options.tail_tol)) / beta,
                       options.step);
    } else {
      t_end = spec.horizon.value;
    }
  }
  if (options.steps > 0) return TimeGrid(t_end, options.steps);
  const int steps =
      std::max(1, static_cast<int>(std::ceil(t_end / options.step - 1e-9)));
  // Discounted truncations are rounded up to a whole number of steps.
  if (spec.horizon.discounted() && options.t_end <= 0.0) {
    return TimeGrid(steps * options.step, steps);
  }
  return TimeGrid(t_end, steps);
}

}  // namespace mfg
