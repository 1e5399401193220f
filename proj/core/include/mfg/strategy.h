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

#ifndef MFG_STRATEGY_H_
#define MFG_STRATEGY_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mfg/time_grid.h"

namespace mfg {

// Time-dependent per-state action distribution, piecewise constant on the
// intervals of a uniform grid. Depends only on the player's own state.
class LocalStrategy {
 public:
  // probs[(k * E + i) * A + a]; every (k, i) row must be a probability vector
  // within 1e-12. Throws ValidationError otherwise.
  LocalStrategy(TimeGrid grid, int n_states, int n_actions,
                std::vector<double> probs);

  static LocalStrategy Uniform(const TimeGrid& grid, int n_states,
                               int n_actions);
  static LocalStrategy Always(const TimeGrid& grid, int n_states,
                              int n_actions, int action);
  // actions[k * E + i] is the action played on interval k in state i.
  static LocalStrategy Pure(const TimeGrid& grid, int n_states, int n_actions,
                            const std::vector<int>& actions);

  const TimeGrid& grid() const { return grid_; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }

  std::span<const double> At(int k, int i) const {
    return {probs_.data() + (static_cast<std::size_t>(k) * n_states_ + i) *
                                n_actions_,
            static_cast<std::size_t>(n_actions_)};
  }
  // The action if row (k, i) is a point mass.
  std::optional<int> PureAction(int k, int i) const;
  bool IsPure() const;

  const std::vector<double>& probs() const { return probs_; }

 private:
  TimeGrid grid_;
  int n_states_;
  int n_actions_;
  std::vector<double> probs_;
};

// Action distribution depending on time, own state and the population
// distribution: (t, i, m) -> P(A).
class MarkovStrategy {
 public:
  using Fn = std::function<void(double t, int state, std::span<const double> m,
                                std::span<double> probs)>;

  MarkovStrategy(int n_states, int n_actions, Fn fn, std::string name = "");

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  const std::string& name() const { return name_; }

  // Throws ValidationError if fn returns something off the simplex.
  void Evaluate(double t, int state, std::span<const double> m,
                std::span<double> probs) const;

 private:
  int n_states_;
  int n_actions_;
  Fn fn_;
  std::string name_;
};

using Strategy = std::variant<LocalStrategy, MarkovStrategy>;

int StrategyStates(const Strategy& s);
int StrategyActions(const Strategy& s);

// A strategy read on the intervals of a working grid. Local strategies need a
// grid that the working grid refines; Markov strategies are sampled at the
// left endpoint (t_k, m) of each working interval. Borrows `strategy`, which
// must outlive the binding.
class BoundStrategy {
 public:
  BoundStrategy(const Strategy& strategy, const TimeGrid& grid);

  void Probabilities(int k, int state, std::span<const double> m,
                     std::span<double> probs) const;
  bool depends_on_population() const { return markov_ != nullptr; }

 private:
  const LocalStrategy* local_ = nullptr;
  const MarkovStrategy* markov_ = nullptr;
  TimeGrid grid_;
  int ratio_ = 1;
};

// Checks that p is a probability vector within tol.
bool IsProbabilityVector(std::span<const double> p, double tol = 1e-12);

}  // namespace mfg

#endif  // MFG_STRATEGY_H_
