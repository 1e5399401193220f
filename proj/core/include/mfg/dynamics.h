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

#ifndef MFG_DYNAMICS_H_
#define MFG_DYNAMICS_H_

#include <span>

#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"
#include "mfg/time_grid.h"

namespace mfg {

// Population flow m(t) induced when every player uses `pi`, from spec.m0.
//
// Continuous time: classical RK4 on dm_j/dt = sum_{i,a} m_i Q_ija(m) pi_ia(t),
// the control frozen on each grid interval, followed by a projection onto
// the simplex (corrections reported in PopulationPath::projection()).
// Discrete time: m_j(t+1) = sum_{i,a} m_i(t) P_ija(m(t)) pi_ia(t).
//
// `grid` must refine the grid of a local strategy. Throws ValidationError for
// an invalid spec and GridError for incompatible grids.
PopulationPath IntegratePopulation(const GameSpec& spec, const Strategy& pi,
                                   const TimeGrid& grid);

// Law x(t) of a tagged player using `pi0` from x0 while the population
// follows `mpath`; same schemes, with m(t) at the RK4 stage times taken from
// the stages recorded in `mpath` (linear interpolation when absent). Runs on
// mpath's grid.
PopulationPath IntegrateTagged(const GameSpec& spec, const Strategy& pi0,
                               const PopulationPath& mpath,
                               std::span<const double> x0);

}  // namespace mfg

#endif  // MFG_DYNAMICS_H_
