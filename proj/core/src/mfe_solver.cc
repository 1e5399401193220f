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

#include "mfg/mfe_solver.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mfg/best_response.h"
#include "mfg/dynamics.h"
#include "mfg/errors.h"
#include "mfg/exploitability.h"
#include "mfg/validate.h"

namespace mfg {

const char* DampingName(Damping damping) {
  return damping == Damping::kFixed ? "fixed" : "fictitious-play";
}

Damping ParseDamping(const std::string& name) {
  if (name == "fixed") return Damping::kFixed;
  if (name == "fictitious-play" || name == "fp") {
    return Damping::kFictitiousPlay;
  }
  throw ValidationError("unknown damping '" + name +
                        "' (expected fixed or fictitious-play)");
}

namespace {

std::vector<double> Mix(const std::vector<double>& a,
                        const std::vector<double>& b, double lambda) {
  std::vector<double> out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    out[r] = (1.0 - lambda) * a[r] + lambda * b[r];
  }
  return out;
}

// Convex combination of two paths on the same grid, renormalized pointwise.
// Recorded RK4 stages are mixed alongside.
PopulationPath MixPaths(const PopulationPath& m, const PopulationPath& m_hat,
                        double lambda) {
  if (lambda == 1.0) return m_hat;
  std::vector<double> values = Mix(m.values(), m_hat.values(), lambda);
  ProjectionStats stats;
  const int n = m.n_states();
  for (int k = 0; k <= m.grid().steps(); ++k) {
    ProjectToSimplex(
        std::span<double>(values.data() + static_cast<std::size_t>(k) * n, n),
        stats);
  }
  PopulationPath mixed(m.grid(), n, std::move(values));
  if (m.has_stages() && m_hat.has_stages()) {
    std::vector<double> a, b;
    for (int k = 0; k < m.grid().steps(); ++k) {
      for (int s = 2; s <= 4; ++s) {
        auto sa = m.Stage(k, s);
        auto sb = m_hat.Stage(k, s);
        a.insert(a.end(), sa.begin(), sa.end());
        b.insert(b.end(), sb.begin(), sb.end());
      }
    }
    mixed.set_stages(Mix(a, b, lambda));
  }
  return mixed;
}

}  // namespace

MfeResult SolveMfe(const GameSpec& spec, const SolverConfig& config) {
  RequireValid(spec);
  if (config.max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (config.damping == Damping::kFixed &&
      !(config.lambda > 0.0 && config.lambda <= 1.0)) {
    throw ValidationError("damping lambda must lie in (0, 1]");
  }
  if (!(config.eps_tol > 0.0) || !(config.path_tol > 0.0)) {
    throw ValidationError("solver tolerances must be positive");
  }
  const TimeGrid grid = config.grid ? *config.grid : DefaultGrid(spec);

  PopulationPath m = IntegratePopulation(
      spec, LocalStrategy::Uniform(grid, spec.n_states, spec.n_actions), grid);
  LocalStrategy pi = BestResponse(spec, m).strategy;
  MfeResult result{pi, m, 0.0, 0, false, {}};

  for (int it = 0; it < config.max_iters; ++it) {
    const double lambda = config.damping == Damping::kFixed
                              ? config.lambda
                              : 1.0 / (static_cast<double>(it) + 1.0);
    const Strategy current(pi);
    ExploitabilityResult ex = ComputeExploitability(spec, current, grid);
    PopulationPath next = MixPaths(m, ex.mpath, lambda);
    const double change = next.SupDistance(m);
    result.history.push_back({change, ex.value});
    result.iterations = it + 1;
    const bool done = ex.value <= config.eps_tol && change <= config.path_tol;
    // With lambda = 1 the next iterate is m_hat, whose best response the
    // exploitability computation already produced.
    pi = lambda == 1.0 ? std::move(ex.best_response)
                       : BestResponse(spec, next).strategy;
    m = std::move(next);
    if (done) {
      result.converged = true;
      break;
    }
  }

  result.strategy = pi;
  result.mpath = m;
  result.exploitability = Exploitability(spec, Strategy(pi), grid);
  if (result.exploitability > config.eps_tol) result.converged = false;
  return result;
}

MfeVerification VerifyMfe(const GameSpec& spec, const Strategy& pi, double eps,
                          const TimeGrid& grid) {
  MfeVerification out;
  ExploitabilityResult ex = ComputeExploitability(spec, pi, grid);
  out.exploitability = ex.value;
  const PopulationPath x = IntegrateTagged(spec, pi, ex.mpath, spec.m0);
  out.self_consistency = x.SupDistance(ex.mpath);
  const PopulationPath m_br =
      IntegratePopulation(spec, Strategy(ex.best_response), grid);
  out.br_path_distance = m_br.SupDistance(ex.mpath);
  out.ok = out.exploitability <= eps && out.self_consistency <= 1e-9;
  return out;
}

}  // namespace mfg
