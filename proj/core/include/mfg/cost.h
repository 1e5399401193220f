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

#ifndef MFG_COST_H_
#define MFG_COST_H_

#include <optional>
#include <span>

#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"

namespace mfg {

struct CostResult {
  double value = 0.0;
  // Bound on the cost omitted by truncating a discounted horizon at the end
  // of the grid (0 for finite horizons).
  double tail_bound = 0.0;
};

// Expected cost of a tagged player using `pi0` from x0 against `mpath`.
//
// Continuous time: trapezoidal quadrature, interval by interval, of
// sum_{i,a} x_i(t) c_ia(m(t)) pi0_ia(t) e^{-beta t} (no discount for a finite
// horizon, whose grid must end at T). Discrete time: the exact sum over the
// grid epochs with weight delta^t (times 1 - delta when normalized).
//
// If `tail_tol` is given and the truncation tail bound exceeds it, throws
// NumericalError.
CostResult EvaluateCost(const GameSpec& spec, const Strategy& pi0,
                        const PopulationPath& mpath,
                        std::span<const double> x0,
                        std::optional<double> tail_tol = std::nullopt);

// Same quadrature when the tagged law is already known.
double PathCost(const GameSpec& spec, const Strategy& pi0,
                const PopulationPath& mpath, const PopulationPath& xpath);

// Tail bound of a discounted truncation at the end of `grid`.
double TruncationTailBound(const GameSpec& spec, const TimeGrid& grid);

// Throws GridError if a finite-horizon grid does not cover exactly [0, T]
// (continuous) or the epochs 0..T (discrete).
void CheckHorizonGrid(const GameSpec& spec, const TimeGrid& grid);

}  // namespace mfg

#endif  // MFG_COST_H_
