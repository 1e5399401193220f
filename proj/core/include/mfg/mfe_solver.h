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

#ifndef MFG_MFE_SOLVER_H_
#define MFG_MFE_SOLVER_H_

#include <optional>
#include <string>
#include <vector>

#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"
#include "mfg/time_grid.h"

namespace mfg {

enum class Damping {
  kFixed,           // m <- (1 - lambda) m + lambda m_hat
  kFictitiousPlay,  // lambda_k = 1 / (k + 1), k = 0, 1, ...
};

const char* DampingName(Damping damping);
// "fixed" or "fictitious-play"; throws ValidationError otherwise.
Damping ParseDamping(const std::string& name);

struct SolverConfig {
  int max_iters = 200;
  Damping damping = Damping::kFictitiousPlay;
  // Used with Damping::kFixed.
  double lambda = 1.0;
  double eps_tol = 1e-6;
  double path_tol = 1e-6;
  // Defaults to DefaultGrid(spec).
  std::optional<TimeGrid> grid;
};

struct IterationRecord {
  // sup over the grid of |m^{k+1} - m^k|.
  double path_change = 0.0;
  // Exploitability of BR(m^k).
  double exploitability = 0.0;
};

struct MfeResult {
  LocalStrategy strategy;
  // Final iterate m^final (the strategy is BR(m^final)).
  PopulationPath mpath;
  // Exploitability of `strategy`.
  double exploitability = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

// Damped fixed-point iteration on the population path, started from the flow
// of the uniform strategy:
//   pi^{k+1} = BR(m^k), m_hat = flow of pi^{k+1},
//   m^{k+1} = (1 - lambda_k) m^k + lambda_k m_hat.
// Stops once exploitability(pi^{k+1}) <= eps_tol and the path change is at
// most path_tol, or after max_iters. Non-convergence is reported through
// `converged`; it is not an error. Deterministic.
MfeResult SolveMfe(const GameSpec& spec, const SolverConfig& config = {});

struct MfeVerification {
  bool ok = false;
  double exploitability = 0.0;
  // sup |x^{pi, m^pi} - m^pi|: a tagged player using pi from m0 reproduces
  // the flow (checked to 1e-9).
  double self_consistency = 0.0;
  // sup |m^{BR(pi)} - m^pi|, informational.
  double br_path_distance = 0.0;
};

// True iff exploitability(pi) <= eps and the flow is self-consistent.
MfeVerification VerifyMfe(const GameSpec& spec, const Strategy& pi, double eps,
                          const TimeGrid& grid);

}  // namespace mfg

#endif  // MFG_MFE_SOLVER_H_
