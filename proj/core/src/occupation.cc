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

#include "mfg/occupation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mfg/cost.h"
#include "mfg/dynamics.h"
#include "mfg/errors.h"

namespace mfg {

OccupationPath BuildOccupation(const GameSpec& spec, const Strategy& pi0,
                               const PopulationPath& mpath,
                               std::span<const double> x0) {
  PopulationPath x = IntegrateTagged(spec, pi0, mpath, x0);
  const TimeGrid& grid = mpath.grid();
  const int n = spec.n_states;
  const int na = spec.n_actions;
  const std::size_t size = static_cast<std::size_t>(grid.steps()) * n * na;
  OccupationPath occ{grid, n, na, x, std::vector<double>(size),
                     std::vector<double>(size)};
  const BoundStrategy bound(pi0, grid);
  std::vector<double> p(na);
  for (int k = 0; k < grid.steps(); ++k) {
    for (int i = 0; i < n; ++i) {
      bound.Probabilities(k, i, mpath.At(k), p);
      for (int a = 0; a < na; ++a) {
        occ.z_start[occ.Index(k, i, a)] = x.At(k)[i] * p[a];
        occ.z_end[occ.Index(k, i, a)] = x.At(k + 1)[i] * p[a];
      }
    }
  }
  return occ;
}

OccupationReport CheckOccupation(const GameSpec& spec,
                                 const OccupationPath& occ,
                                 const PopulationPath& mpath,
                                 double reference_cost) {
  if (!(occ.grid == mpath.grid())) {
    throw GridError("occupation measure and population path grids differ");
  }
  const TimeGrid& grid = occ.grid;
  const int n = occ.n_states;
  const int na = occ.n_actions;
  const int steps = grid.steps();
  const double h = grid.step();
  const bool continuous = spec.continuous();

  OccupationReport report;
  report.reference_cost = reference_cost;
  report.dynamics_tolerance = continuous ? 10.0 * h : 1e-9;
  report.min_z = std::numeric_limits<double>::infinity();

  auto marginal = [&](const std::vector<double>& z, int k, int j) {
    double s = 0.0;
    for (int a = 0; a < na; ++a) s += z[occ.Index(k, j, a)];
    return s;
  };

  std::vector<double> q_left(spec.transition_dim()),
      q_right(spec.transition_dim());
  std::vector<double> c_left(spec.cost_dim()), c_right(spec.cost_dim());
  const double beta =
      continuous && spec.horizon.discounted() ? spec.horizon.value : 0.0;
  const double gamma =
      !continuous && spec.horizon.discounted() ? spec.horizon.value : 1.0;
  double discount = 1.0;
  double objective = 0.0;

  for (int k = 0; k < steps; ++k) {
    for (int j = 0; j < n; ++j) {
      report.max_marginal_error =
          std::max({report.max_marginal_error,
                    std::abs(marginal(occ.z_start, k, j) - occ.x.At(k)[j]),
                    std::abs(marginal(occ.z_end, k, j) - occ.x.At(k + 1)[j])});
      for (int a = 0; a < na; ++a) {
        report.min_z = std::min({report.min_z, occ.z_start[occ.Index(k, j, a)],
                                 occ.z_end[occ.Index(k, j, a)]});
      }
    }
    spec.transitions.Evaluate(mpath.At(k), q_left);
    spec.costs.Evaluate(mpath.At(k), c_left);
    if (continuous) {
      spec.transitions.Evaluate(mpath.At(k + 1), q_right);
      spec.costs.Evaluate(mpath.At(k + 1), c_right);
    }
    double stage_left = 0.0;
    double stage_right = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < na; ++a) {
        stage_left += occ.z_start[occ.Index(k, i, a)] *
                      c_left[spec.CostIndex(i, a)];
        if (continuous) {
          stage_right += occ.z_end[occ.Index(k, i, a)] *
                         c_right[spec.CostIndex(i, a)];
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      double flow_left = 0.0;
      double flow_right = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int a = 0; a < na; ++a) {
          flow_left += occ.z_start[occ.Index(k, i, a)] *
                       q_left[spec.TransitionIndex(i, j, a)];
          if (continuous) {
            flow_right += occ.z_end[occ.Index(k, i, a)] *
                          q_right[spec.TransitionIndex(i, j, a)];
          }
        }
      }
      const double residual =
          continuous
              ? (occ.x.At(k + 1)[j] - occ.x.At(k)[j]) / h -
                    0.5 * (flow_left + flow_right)
              : occ.x.At(k + 1)[j] - flow_left;
      report.max_dynamics_residual =
          std::max(report.max_dynamics_residual, std::abs(residual));
    }
    if (continuous) {
      objective += 0.5 * h *
                   (std::exp(-beta * grid.time(k)) * stage_left +
                    std::exp(-beta * grid.time(k + 1)) * stage_right);
    } else {
      objective += discount * stage_left;
      discount *= gamma;
    }
  }
  if (!continuous) objective *= DiscreteCostWeight(spec);
  report.objective = objective;

  auto flag = [&](const std::string& what, double value, double tol) {
    std::ostringstream os;
    os << what << " " << value << " exceeds " << tol;
    report.violations.push_back(os.str());
  };
  if (report.max_marginal_error > 1e-9) {
    flag("marginal consistency sum_a z_ja - x_j:", report.max_marginal_error,
         1e-9);
  }
  if (report.min_z < -1e-9) flag("negative occupation:", -report.min_z, 1e-9);
  if (report.max_dynamics_residual > report.dynamics_tolerance) {
    flag("forward-equation residual:", report.max_dynamics_residual,
         report.dynamics_tolerance);
  }
  if (std::abs(objective - reference_cost) > 1e-9) {
    flag("objective mismatch:", std::abs(objective - reference_cost), 1e-9);
  }
  return report;
}

OccupationReport OccupationCheck(const GameSpec& spec, const Strategy& pi0,
                                 const PopulationPath& mpath,
                                 std::span<const double> x0) {
  const double cost = EvaluateCost(spec, pi0, mpath, x0).value;
  return CheckOccupation(spec, BuildOccupation(spec, pi0, mpath, x0), mpath,
                         cost);
}

}  // namespace mfg
