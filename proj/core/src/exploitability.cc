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

#include "mfg/exploitability.h"

#include <algorithm>

#include "mfg/cost.h"
#include "mfg/dynamics.h"

namespace mfg {

ExploitabilityResult ComputeExploitability(const GameSpec& spec,
                                           const Strategy& pi,
                                           const PopulationPath& mpath) {
  BestResponseResult br = BestResponse(spec, mpath);
  const double v_pi = EvaluateCost(spec, pi, mpath, spec.m0).value;
  const double v_br =
      EvaluateCost(spec, Strategy(br.strategy), mpath, spec.m0).value;
  const double gap = v_pi - v_br;
  return {std::max(gap, 0.0), gap, v_pi, v_br, mpath, std::move(br.strategy)};
}

ExploitabilityResult ComputeExploitability(const GameSpec& spec,
                                           const Strategy& pi,
                                           const TimeGrid& grid) {
  return ComputeExploitability(spec, pi, IntegratePopulation(spec, pi, grid));
}

double Exploitability(const GameSpec& spec, const Strategy& pi,
                      const TimeGrid& grid) {
  return ComputeExploitability(spec, pi, grid).value;
}

}  // namespace mfg
