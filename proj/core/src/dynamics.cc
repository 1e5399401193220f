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

#include "mfg/dynamics.h"

#include <algorithm>
#include <string>
#include <vector>

#include "mfg/errors.h"
#include "mfg/strategy.h"
#include "mfg/validate.h"

namespace mfg {
namespace {

// Effective generator (or kernel) G_ij = sum_a pi_ia T_ija for one frozen
// control; `pi` is laid out [i * A + a].
void MixTransitions(const GameSpec& spec, std::span<const double> t,
                    std::span<const double> pi, std::span<double> g) {
  const int n = spec.n_states;
  const int na = spec.n_actions;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int a = 0; a < na; ++a) {
        v += pi[i * na + a] * t[spec.TransitionIndex(i, j, a)];
      }
      g[i * n + j] = v;
    }
  }
}

// out = x G
void LeftMultiply(int n, std::span<const double> x, std::span<const double> g,
                  std::span<double> out) {
  for (int j = 0; j < n; ++j) out[j] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < n; ++j) out[j] += xi * g[i * n + j];
  }
}

class Integrator {
 public:
  explicit Integrator(const GameSpec& spec)
      : spec_(spec),
        n_(spec.n_states),
        trans_(spec.transition_dim()),
        pi_(spec.cost_dim()),
        g_(static_cast<std::size_t>(n_) * n_),
        k1_(n_), k2_(n_), k3_(n_), k4_(n_), tmp_(n_) {}

  // Control rows for interval k, sampled at population m.
  void SampleControl(const BoundStrategy& s, int k, std::span<const double> m) {
    const int na = spec_.n_actions;
    for (int i = 0; i < n_; ++i) {
      s.Probabilities(k, i, m, std::span<double>(pi_).subspan(i * na, na));
    }
  }

  // y' = y G(m(y or given))
  void Derivative(std::span<const double> y, std::span<const double> m,
                  std::span<double> out) {
    spec_.transitions.Evaluate(m, trans_);
    MixTransitions(spec_, trans_, pi_, g_);
    LeftMultiply(n_, y, g_, out);
  }

  // One RK4 step of the population flow (m drives its own rates). The three
  // inner stage populations are written to `stages` (3 * E values).
  void PopulationStep(std::span<double> m, double h, std::span<double> stages) {
    Derivative(m, m, k1_);
    Axpy(m, 0.5 * h, k1_);
    std::copy(tmp_.begin(), tmp_.end(), stages.begin());
    Derivative(tmp_, tmp_, k2_);
    Axpy(m, 0.5 * h, k2_);
    std::copy(tmp_.begin(), tmp_.end(), stages.begin() + n_);
    Derivative(tmp_, tmp_, k3_);
    Axpy(m, h, k3_);
    std::copy(tmp_.begin(), tmp_.end(), stages.begin() + 2 * n_);
    Derivative(tmp_, tmp_, k4_);
    Combine(m, h);
  }

  // One RK4 step of the tagged law; s2..s4 are the population at the inner
  // stages.
  void TaggedStep(std::span<double> x, std::span<const double> ma,
                  std::span<const double> s2, std::span<const double> s3,
                  std::span<const double> s4, double h) {
    Derivative(x, ma, k1_);
    Axpy(x, 0.5 * h, k1_);
    Derivative(tmp_, s2, k2_);
    Axpy(x, 0.5 * h, k2_);
    Derivative(tmp_, s3, k3_);
    Axpy(x, h, k3_);
    Derivative(tmp_, s4, k4_);
    Combine(x, h);
  }

  // y <- y P(m) in discrete time.
  void KernelStep(std::span<double> y, std::span<const double> m) {
    spec_.transitions.Evaluate(m, trans_);
    MixTransitions(spec_, trans_, pi_, g_);
    LeftMultiply(n_, y, g_, tmp_);
    std::copy(tmp_.begin(), tmp_.end(), y.begin());
  }

 private:
  void Axpy(std::span<const double> y, double a, std::span<const double> k) {
    for (int j = 0; j < n_; ++j) tmp_[j] = y[j] + a * k[j];
  }
  void Combine(std::span<double> y, double h) {
    for (int j = 0; j < n_; ++j) {
      y[j] += h / 6.0 * (k1_[j] + 2.0 * k2_[j] + 2.0 * k3_[j] + k4_[j]);
    }
  }

  const GameSpec& spec_;
  int n_;
  std::vector<double> trans_, pi_, g_, k1_, k2_, k3_, k4_, tmp_;
};

void CheckStrategyShape(const GameSpec& spec, const Strategy& s) {
  if (StrategyStates(s) != spec.n_states ||
      StrategyActions(s) != spec.n_actions) {
    throw ValidationError("strategy shape (" +
                          std::to_string(StrategyStates(s)) + " states, " +
                          std::to_string(StrategyActions(s)) +
                          " actions) does not match the game");
  }
}

}  // namespace

PopulationPath IntegratePopulation(const GameSpec& spec, const Strategy& pi,
                                   const TimeGrid& grid) {
  RequireValid(spec);
  CheckStrategyShape(spec, pi);
  const BoundStrategy bound(pi, grid);
  const int n = spec.n_states;
  const int steps = grid.steps();
  std::vector<double> values(static_cast<std::size_t>(steps + 1) * n);
  std::copy(spec.m0.begin(), spec.m0.end(), values.begin());

  std::vector<double> stages;
  if (spec.continuous()) stages.resize(static_cast<std::size_t>(steps) * 3 * n);

  Integrator integ(spec);
  ProjectionStats stats;
  std::vector<double> m(spec.m0);
  for (int k = 0; k < steps; ++k) {
    integ.SampleControl(bound, k, m);
    if (spec.continuous()) {
      integ.PopulationStep(
          m, grid.step(),
          std::span<double>(stages).subspan(static_cast<std::size_t>(k) * 3 * n,
                                            3 * n));
    } else {
      integ.KernelStep(m, m);
    }
    ProjectToSimplex(m, stats);
    std::copy(m.begin(), m.end(), values.begin() + (k + 1) * n);
  }
  PopulationPath path(grid, n, std::move(values));
  path.set_projection(stats);
  path.set_stages(std::move(stages));
  return path;
}

PopulationPath IntegrateTagged(const GameSpec& spec, const Strategy& pi0,
                               const PopulationPath& mpath,
                               std::span<const double> x0) {
  RequireValid(spec);
  CheckStrategyShape(spec, pi0);
  const int n = spec.n_states;
  if (mpath.n_states() != n || static_cast<int>(x0.size()) != n) {
    throw ValidationError("tagged integration: dimension mismatch");
  }
  if (!IsProbabilityVector(x0, 1e-9)) {
    throw ValidationError("tagged integration: x0 is not on the simplex");
  }
  const TimeGrid& grid = mpath.grid();
  const BoundStrategy bound(pi0, grid);
  const int steps = grid.steps();
  std::vector<double> values(static_cast<std::size_t>(steps + 1) * n);
  std::copy(x0.begin(), x0.end(), values.begin());

  Integrator integ(spec);
  ProjectionStats stats;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> mid(n);
  for (int k = 0; k < steps; ++k) {
    const auto ma = mpath.At(k);
    integ.SampleControl(bound, k, ma);
    if (spec.continuous()) {
      const auto mb = mpath.At(k + 1);
      if (mpath.has_stages()) {
        integ.TaggedStep(x, ma, mpath.Stage(k, 2), mpath.Stage(k, 3),
                         mpath.Stage(k, 4), grid.step());
      } else {
        // Linear interpolation of the path at the stage times.
        for (int j = 0; j < n; ++j) mid[j] = 0.5 * (ma[j] + mb[j]);
        integ.TaggedStep(x, ma, mid, mid, mb, grid.step());
      }
    } else {
      integ.KernelStep(x, ma);
    }
    ProjectToSimplex(x, stats);
    std::copy(x.begin(), x.end(), values.begin() + (k + 1) * n);
  }
  PopulationPath path(grid, n, std::move(values));
  path.set_projection(stats);
  return path;
}

}  // namespace mfg
