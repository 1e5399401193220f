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

#ifndef MFG_GAME_H_
#define MFG_GAME_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfg/time_grid.h"

namespace mfg {

// A vector-valued function on the probability simplex over E states.
//
// The affine form f_d(m) = base[d] + sum_k slope[d * E + k] * m_k is the only
// one that can be serialized or checked exhaustively (an affine function
// attains its extrema at the simplex vertices). Arbitrary evaluators are
// accepted for library use.
class SimplexField {
 public:
  using Evaluator =
      std::function<void(std::span<const double> m, std::span<double> out)>;

  SimplexField() = default;

  // `slope` may be empty (constant field).
  static SimplexField Affine(int n_states, std::vector<double> base,
                             std::vector<double> slope = {});
  static SimplexField FromEvaluator(int n_states, int dim, Evaluator f);

  int n_states() const { return n_states_; }
  int dim() const { return dim_; }
  bool is_affine() const { return !evaluator_; }

  // out.size() must equal dim().
  void Evaluate(std::span<const double> m, std::span<double> out) const;
  std::vector<double> Evaluate(std::span<const double> m) const;

  // Affine coefficients; empty for evaluator-backed fields.
  const std::vector<double>& base() const { return base_; }
  const std::vector<double>& slope() const { return slope_; }

 private:
  int n_states_ = 0;
  int dim_ = 0;
  std::vector<double> base_;
  std::vector<double> slope_;
  Evaluator evaluator_;
};

enum class TimeMode { kContinuous, kDiscrete };

struct Horizon {
  enum class Kind { kDiscounted, kFinite };

  Kind kind = Kind::kDiscounted;
  // Discount rate beta > 0 (continuous), discount factor delta in (0, 1)
  // (discrete), or the horizon T.
  double value = 1.0;

  static Horizon Discounted(double v) { return {Kind::kDiscounted, v}; }
  static Horizon Finite(double t) { return {Kind::kFinite, t}; }
  bool discounted() const { return kind == Kind::kDiscounted; }
};

// A finite-state, finite-action mean field game with population-dependent
// transitions and costs.
//
// `transitions` holds the rate matrices Q_ija(m) in continuous time and the
// stochastic kernels P_ija(m) in discrete time, flattened by
// TransitionIndex(). `costs` holds c_ia(m), flattened by CostIndex().
struct GameSpec {
  std::string name;
  int n_states = 0;
  int n_actions = 0;
  std::vector<std::string> state_labels;
  std::vector<std::string> action_labels;
  TimeMode time_mode = TimeMode::kContinuous;
  SimplexField transitions;
  SimplexField costs;
  // Set for cost evaluators known to be discontinuous in m.
  bool discontinuous_cost = false;
  Horizon horizon;
  std::vector<double> m0;
  // Discrete discounted costs carry the (1 - delta) prefactor when set.
  bool normalize_discrete_cost = true;

  std::size_t TransitionIndex(int i, int j, int a) const {
    return (static_cast<std::size_t>(i) * n_states + j) * n_actions + a;
  }
  std::size_t CostIndex(int i, int a) const {
    return static_cast<std::size_t>(i) * n_actions + a;
  }
  std::size_t transition_dim() const {
    return static_cast<std::size_t>(n_states) * n_states * n_actions;
  }
  std::size_t cost_dim() const {
    return static_cast<std::size_t>(n_states) * n_actions;
  }
  bool continuous() const { return time_mode == TimeMode::kContinuous; }
};

// Vertex e_k of the simplex over n states.
std::vector<double> SimplexVertex(int n, int k);

// max |c_ia(m)| over the simplex vertices (exact bound for affine costs; for
// evaluator-backed costs the vertices and edge midpoints are sampled).
double MaxAbsCost(const GameSpec& spec);

// Weight (1 - delta) applied to every discrete stage cost, or 1.
double DiscreteCostWeight(const GameSpec& spec);

struct GridOptions {
  // Step of continuous grids; ignored in discrete time.
  double step = 1e-2;
  // Continuous discounted truncation: e^{-beta t_end} c_max / beta < tail_tol.
  double tail_tol = 1e-8;
  // Discrete discounted truncation: delta^K c_max / (1 - delta) < this.
  double discrete_tail_tol = 1e-12;
  // Overrides for t_end (continuous) and the number of steps.
  double t_end = 0.0;
  int steps = 0;
};

// Solver grid for the spec's horizon. Continuous finite horizons end at T;
// discounted ones are truncated per GridOptions; discrete finite horizons
// have T + 1 decision epochs (t = 0..T).
TimeGrid DefaultGrid(const GameSpec& spec, const GridOptions& options = {});

}  // namespace mfg

#endif  // MFG_GAME_H_
