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

#ifndef MFG_OCCUPATION_H_
#define MFG_OCCUPATION_H_

#include <span>
#include <string>
#include <vector>

#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"

namespace mfg {

// Occupation measure z_ia(t) = x_i(t) pi0_ia(t) of a tagged player, stored
// at both ends of every grid interval with that interval's control:
// start(k) = x(t_k) pi0_k and end(k) = x(t_{k+1}) pi0_k.
struct OccupationPath {
  TimeGrid grid;
  int n_states = 0;
  int n_actions = 0;
  PopulationPath x;
  std::vector<double> z_start;  // [(k * E + i) * A + a]
  std::vector<double> z_end;

  std::size_t Index(int k, int i, int a) const {
    return (static_cast<std::size_t>(k) * n_states + i) * n_actions + a;
  }
};

OccupationPath BuildOccupation(const GameSpec& spec, const Strategy& pi0,
                               const PopulationPath& mpath,
                               std::span<const double> x0);

struct OccupationReport {
  // max |sum_a z_ja - x_j| over grid points and both interval ends.
  double max_marginal_error = 0.0;
  double min_z = 0.0;
  // Continuous: max |(x_j(t_{k+1}) - x_j(t_k)) / h - trapezoid of
  // sum_{i,a} z_ia Q_ija(m)|. Discrete: max |x_j(t+1) - sum z_ia P_ija(m_t)|.
  double max_dynamics_residual = 0.0;
  double dynamics_tolerance = 0.0;
  // Linear objective sum z c (same quadrature as EvaluateCost).
  double objective = 0.0;
  double reference_cost = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Checks the constraints of the occupation-measure formulation on the grid:
// marginals and positivity to 1e-9, the forward equation to 10 h (exactly,
// to 1e-9, in discrete time), and objective == reference_cost to 1e-9.
OccupationReport CheckOccupation(const GameSpec& spec,
                                 const OccupationPath& occupation,
                                 const PopulationPath& mpath,
                                 double reference_cost);

// BuildOccupation + CheckOccupation against EvaluateCost.
OccupationReport OccupationCheck(const GameSpec& spec, const Strategy& pi0,
                                 const PopulationPath& mpath,
                                 std::span<const double> x0);

}  // namespace mfg

#endif  // MFG_OCCUPATION_H_
