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

#ifndef MFG_EXPLOITABILITY_H_
#define MFG_EXPLOITABILITY_H_

#include "mfg/best_response.h"
#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"

namespace mfg {

struct ExploitabilityResult {
  // max(raw_gap, 0).
  double value = 0.0;
  // V(pi, pi) - V(BR(pi), pi). Can dip below zero by the discretization gap
  // between the Bellman scheme and the cost quadrature.
  double raw_gap = 0.0;
  double v_pi = 0.0;
  double v_br = 0.0;
  PopulationPath mpath;
  LocalStrategy best_response;
};

// Exploitability of `pi` on `grid`: the flow m^pi is integrated on `grid`,
// both costs are EvaluateCost from spec.m0.
ExploitabilityResult ComputeExploitability(const GameSpec& spec,
                                           const Strategy& pi,
                                           const TimeGrid& grid);

// Same, when m^pi is already known.
ExploitabilityResult ComputeExploitability(const GameSpec& spec,
                                           const Strategy& pi,
                                           const PopulationPath& mpath);

double Exploitability(const GameSpec& spec, const Strategy& pi,
                      const TimeGrid& grid);

}  // namespace mfg

#endif  // MFG_EXPLOITABILITY_H_
