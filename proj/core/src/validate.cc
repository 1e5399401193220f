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

#include "mfg/validate.h"

#include <cmath>
#include <sstream>

#include "mfg/errors.h"

namespace mfg {
namespace {

constexpr double kTol = 1e-12;

std::string VertexName(const GameSpec& spec, int k) {
  std::string s = "e_" + std::to_string(k + 1);
  if (k < static_cast<int>(spec.state_labels.size())) {
    s += " (all mass on " + spec.state_labels[k] + ")";
  }
  return s;
}

// Points where the transition/cost fields are checked: the vertices, plus
// edge midpoints and the barycenter for evaluator-backed fields.
std::vector<std::vector<double>> CheckPoints(const GameSpec& spec,
                                             bool affine) {
  const int n = spec.n_states;
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < n; ++k) pts.push_back(SimplexVertex(n, k));
  if (!affine) {
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        std::vector<double> mid(n, 0.0);
        mid[k] = mid[l] = 0.5;
        pts.push_back(std::move(mid));
      }
    }
    pts.emplace_back(n, 1.0 / n);
  }
  return pts;
}

void CheckTransitions(const GameSpec& spec, ValidationReport& report) {
  const int n = spec.n_states;
  const auto points = CheckPoints(spec, spec.transitions.is_affine());
  std::vector<double> q(spec.transition_dim());
  const bool rates = spec.continuous();
  for (std::size_t p = 0; p < points.size(); ++p) {
    spec.transitions.Evaluate(points[p], q);
    const std::optional<int> vertex =
        p < static_cast<std::size_t>(n) ? std::optional<int>(p) : std::nullopt;
    const std::string where =
        vertex ? "at vertex " + VertexName(spec, *vertex)
               : "at sampled point #" + std::to_string(p + 1);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < spec.n_actions; ++a) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
          const double v = q[spec.TransitionIndex(i, j, a)];
          row += v;
          const bool must_be_nonneg = !rates || j != i;
          if (must_be_nonneg && v < -kTol) {
            std::ostringstream os;
            os << (rates ? "negative rate Q" : "negative probability P")
               << "(" << i + 1 << "->" << j + 1 << ", action " << a + 1
               << ") = " << v << " " << where;
            report.issues.push_back({rates ? IssueKind::kGenerator
                                           : IssueKind::kStochastic,
                                     os.str(), vertex});
          }
          if (!std::isfinite(v)) {
            report.issues.push_back(
                {rates ? IssueKind::kGenerator : IssueKind::kStochastic,
                 "non-finite transition entry " + where, vertex});
          }
        }
        const double target = rates ? 0.0 : 1.0;
        if (std::abs(row - target) > kTol) {
          std::ostringstream os;
          os << (rates ? "rate" : "kernel") << " row " << i + 1
             << " (action " << a + 1 << ") sums to " << row << ", expected "
             << target << " " << where;
          report.issues.push_back({rates ? IssueKind::kGenerator
                                         : IssueKind::kStochastic,
                                   os.str(), vertex});
        }
      }
    }
  }
}

void CheckCosts(const GameSpec& spec, ValidationReport& report) {
  const auto points = CheckPoints(spec, spec.costs.is_affine());
  std::vector<double> c(spec.cost_dim());
  for (const auto& m : points) {
    spec.costs.Evaluate(m, c);
    for (double v : c) {
      if (!std::isfinite(v)) {
        report.issues.push_back({IssueKind::kCost, "non-finite cost value",
                                 std::nullopt});
        return;
      }
    }
  }
  if (spec.discontinuous_cost) {
    report.issues.push_back(
        {IssueKind::kContinuity,
         "cost is discontinuous in m (continuity assumption violated; a mean "
         "field equilibrium need not exist)",
         std::nullopt});
  }
}

}  // namespace

bool ValidationReport::structurally_valid() const {
  for (const auto& issue : issues) {
    if (issue.kind != IssueKind::kContinuity) return false;
  }
  return true;
}

std::string ValidationReport::ToString() const {
  if (issues.empty()) return "ok\n";
  std::ostringstream os;
  for (const auto& issue : issues) os << "- " << issue.message << "\n";
  return os.str();
}

ValidationReport ValidateSpec(const GameSpec& spec) {
  ValidationReport report;
  const int n = spec.n_states;
  const int na = spec.n_actions;
  if (n < 1 || na < 1) {
    report.issues.push_back({IssueKind::kShape,
                             "need at least one state and one action",
                             std::nullopt});
    return report;
  }
  if (!spec.state_labels.empty() &&
      static_cast<int>(spec.state_labels.size()) != n) {
    report.issues.push_back(
        {IssueKind::kShape, "state label count differs from n_states",
         std::nullopt});
  }
  if (!spec.action_labels.empty() &&
      static_cast<int>(spec.action_labels.size()) != na) {
    report.issues.push_back(
        {IssueKind::kShape, "action label count differs from n_actions",
         std::nullopt});
  }

  if (static_cast<int>(spec.m0.size()) != n) {
    report.issues.push_back({IssueKind::kShape,
                             "m0 has " + std::to_string(spec.m0.size()) +
                                 " entries, expected " + std::to_string(n),
                             std::nullopt});
  } else {
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
      mass += spec.m0[i];
      if (spec.m0[i] < 0.0) {
        std::ostringstream os;
        os << "m0[" << i + 1 << "] = " << spec.m0[i] << " is negative";
        report.issues.push_back({IssueKind::kInitial, os.str(), std::nullopt});
      }
    }
    if (std::abs(mass - 1.0) > kTol) {
      std::ostringstream os;
      os << "m0 has total mass " << mass << ", expected 1";
      report.issues.push_back({IssueKind::kInitial, os.str(), std::nullopt});
    }
  }

  const double h = spec.horizon.value;
  if (spec.continuous()) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      report.issues.push_back(
          {IssueKind::kHorizon,
           spec.horizon.discounted()
               ? "continuous-time discount rate beta must be > 0"
               : "continuous-time horizon T must be > 0",
           std::nullopt});
    }
  } else if (spec.horizon.discounted()) {
    if (!(h > 0.0 && h < 1.0)) {
      report.issues.push_back(
          {IssueKind::kHorizon, "discrete discount factor must lie in (0, 1)",
           std::nullopt});
    }
  } else if (!(h >= 0.0) || h != std::floor(h)) {
    report.issues.push_back(
        {IssueKind::kHorizon,
         "discrete horizon T must be a non-negative integer", std::nullopt});
  }

  const bool shapes_ok =
      spec.transitions.dim() == static_cast<int>(spec.transition_dim()) &&
      spec.transitions.n_states() == n &&
      spec.costs.dim() == static_cast<int>(spec.cost_dim()) &&
      spec.costs.n_states() == n;
  if (!shapes_ok) {
    report.issues.push_back(
        {IssueKind::kShape,
         "transition/cost models do not match n_states x n_actions",
         std::nullopt});
    return report;
  }
  CheckTransitions(spec, report);
  CheckCosts(spec, report);
  return report;
}

void RequireValid(const GameSpec& spec) {
  auto report = ValidateSpec(spec);
  if (!report.structurally_valid()) {
    throw ValidationError("invalid game spec '" + spec.name + "':\n" +
                          report.ToString());
  }
}

}  // namespace mfg
