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

#include "mfg/cost.h"

#include <cmath>
#include <string>
#include <vector>

#include "mfg/dynamics.h"
#include "mfg/errors.h"
#include "mfg/validate.h"

namespace mfg {

double TruncationTailBound(const GameSpec& spec, const TimeGrid& grid) {
  if (!spec.horizon.discounted()) return 0.0;
  const double c_max = MaxAbsCost(spec);
  if (spec.continuous()) {
    const double beta = spec.horizon.value;
    return std::exp(-beta * grid.t_end()) * c_max / beta;
  }
  const double delta = spec.horizon.value;
  return DiscreteCostWeight(spec) * std::pow(delta, grid.steps()) * c_max /
         (1.0 - delta);
}

void CheckHorizonGrid(const GameSpec& spec, const TimeGrid& grid) {
  if (spec.horizon.discounted()) return;
  const double T = spec.horizon.value;
  if (spec.continuous()) {
    if (std::abs(grid.t_end() - T) > 1e-12 * std::max(1.0, T)) {
      throw GridError("finite-horizon grid must end at T=" + std::to_string(T) +
                      ", ends at " + std::to_string(grid.t_end()));
    }
  } else if (grid.steps() != static_cast<int>(T) + 1) {
    throw GridError("discrete finite horizon T=" + std::to_string(T) +
                    " needs " + std::to_string(static_cast<int>(T) + 1) +
                    " epochs, grid has " + std::to_string(grid.steps()));
  }
}

double PathCost(const GameSpec& spec, const Strategy& pi0,
                const PopulationPath& mpath, const PopulationPath& xpath) {
  const TimeGrid& grid = mpath.grid();
  if (!(xpath.grid() == grid)) {
    throw GridError("tagged law and population path are on different grids");
  }
  CheckHorizonGrid(spec, grid);
  const BoundStrategy bound(pi0, grid);
  const int n = spec.n_states;
  const int na = spec.n_actions;
  std::vector<double> c_left(spec.cost_dim()), c_right(spec.cost_dim());
  std::vector<double> p(na);

  // sum_i x_i sum_a c_ia pi_ia, with the control of interval k.
  auto stage = [&](int k, std::span<const double> x,
                   const std::vector<double>& c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      bound.Probabilities(k, i, mpath.At(k), p);
      double ci = 0.0;
      for (int a = 0; a < na; ++a) ci += c[spec.CostIndex(i, a)] * p[a];
      s += x[i] * ci;
    }
    return s;
  };

  const int steps = grid.steps();
  double total = 0.0;
  if (spec.continuous()) {
    const double beta = spec.horizon.discounted() ? spec.horizon.value : 0.0;
    const double h = grid.step();
    spec.costs.Evaluate(mpath.At(0), c_left);
    for (int k = 0; k < steps; ++k) {
      spec.costs.Evaluate(mpath.At(k + 1), c_right);
      const double wl = std::exp(-beta * grid.time(k));
      const double wr = std::exp(-beta * grid.time(k + 1));
      total += 0.5 * h *
               (wl * stage(k, xpath.At(k), c_left) +
                wr * stage(k, xpath.At(k + 1), c_right));
      std::swap(c_left, c_right);
    }
    return total;
  }
  const double gamma = spec.horizon.discounted() ? spec.horizon.value : 1.0;
  double discount = 1.0;
  for (int k = 0; k < steps; ++k) {
    spec.costs.Evaluate(mpath.At(k), c_left);
    total += discount * stage(k, xpath.At(k), c_left);
    discount *= gamma;
  }
  return DiscreteCostWeight(spec) * total;
}

CostResult EvaluateCost(const GameSpec& spec, const Strategy& pi0,
                        const PopulationPath& mpath,
                        std::span<const double> x0,
                        std::optional<double> tail_tol) {
  RequireValid(spec);
  CostResult result;
  result.tail_bound = TruncationTailBound(spec, mpath.grid());
  if (tail_tol && result.tail_bound > *tail_tol) {
    throw NumericalError("grid ends too early: discounted tail bound " +
                         std::to_string(result.tail_bound) +
                         " exceeds the requested " + std::to_string(*tail_tol));
  }
  const PopulationPath xpath = IntegrateTagged(spec, pi0, mpath, x0);
  result.value = PathCost(spec, pi0, mpath, xpath);
  return result;
}

}  // namespace mfg
