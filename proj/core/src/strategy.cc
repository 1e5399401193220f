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

#include "mfg/strategy.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mfg/errors.h"

namespace mfg {

bool IsProbabilityVector(std::span<const double> p, double tol) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -tol)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

LocalStrategy::LocalStrategy(TimeGrid grid, int n_states, int n_actions,
                             std::vector<double> probs)
    : grid_(grid),
      n_states_(n_states),
      n_actions_(n_actions),
      probs_(std::move(probs)) {
  const std::size_t expected = static_cast<std::size_t>(grid_.steps()) *
                               n_states_ * n_actions_;
  if (probs_.size() != expected) {
    throw ValidationError("local strategy has " +
                          std::to_string(probs_.size()) +
                          " probabilities, expected " +
                          std::to_string(expected));
  }
  for (int k = 0; k < grid_.steps(); ++k) {
    for (int i = 0; i < n_states_; ++i) {
      if (!IsProbabilityVector(At(k, i))) {
        throw ValidationError("local strategy row (interval " +
                              std::to_string(k) + ", state " +
                              std::to_string(i + 1) +
                              ") is not a probability vector");
      }
    }
  }
}

LocalStrategy LocalStrategy::Uniform(const TimeGrid& grid, int n_states,
                                     int n_actions) {
  std::vector<double> p(
      static_cast<std::size_t>(grid.steps()) * n_states * n_actions,
      1.0 / n_actions);
  return LocalStrategy(grid, n_states, n_actions, std::move(p));
}

LocalStrategy LocalStrategy::Always(const TimeGrid& grid, int n_states,
                                    int n_actions, int action) {
  std::vector<int> actions(static_cast<std::size_t>(grid.steps()) * n_states,
                           action);
  return Pure(grid, n_states, n_actions, actions);
}

LocalStrategy LocalStrategy::Pure(const TimeGrid& grid, int n_states,
                                  int n_actions,
                                  const std::vector<int>& actions) {
  if (actions.size() != static_cast<std::size_t>(grid.steps()) * n_states) {
    throw ValidationError("pure strategy needs one action per (interval, "
                          "state)");
  }
  std::vector<double> p(actions.size() * n_actions, 0.0);
  for (std::size_t r = 0; r < actions.size(); ++r) {
    if (actions[r] < 0 || actions[r] >= n_actions) {
      throw ValidationError("action index " + std::to_string(actions[r]) +
                            " out of range");
    }
    p[r * n_actions + actions[r]] = 1.0;
  }
  return LocalStrategy(grid, n_states, n_actions, std::move(p));
}

std::optional<int> LocalStrategy::PureAction(int k, int i) const {
  auto row = At(k, i);
  for (int a = 0; a < n_actions_; ++a) {
    if (row[a] == 1.0) return a;
  }
  return std::nullopt;
}

bool LocalStrategy::IsPure() const {
  for (int k = 0; k < grid_.steps(); ++k) {
    for (int i = 0; i < n_states_; ++i) {
      if (!PureAction(k, i)) return false;
    }
  }
  return true;
}

MarkovStrategy::MarkovStrategy(int n_states, int n_actions, Fn fn,
                               std::string name)
    : n_states_(n_states),
      n_actions_(n_actions),
      fn_(std::move(fn)),
      name_(std::move(name)) {}

void MarkovStrategy::Evaluate(double t, int state, std::span<const double> m,
                              std::span<double> probs) const {
  fn_(t, state, m, probs);
  if (!IsProbabilityVector(probs)) {
    throw ValidationError("Markov strategy '" + name_ +
                          "' returned a non-probability vector at t=" +
                          std::to_string(t));
  }
}

int StrategyStates(const Strategy& s) {
  return std::visit([](const auto& v) { return v.n_states(); }, s);
}

int StrategyActions(const Strategy& s) {
  return std::visit([](const auto& v) { return v.n_actions(); }, s);
}

BoundStrategy::BoundStrategy(const Strategy& strategy, const TimeGrid& grid)
    : grid_(grid) {
  if (const auto* local = std::get_if<LocalStrategy>(&strategy)) {
    local_ = local;
    ratio_ = grid.RefinementRatio(local->grid());
  } else {
    markov_ = &std::get<MarkovStrategy>(strategy);
  }
}

void BoundStrategy::Probabilities(int k, int state, std::span<const double> m,
                                  std::span<double> probs) const {
  if (local_ != nullptr) {
    auto row = local_->At(k / ratio_, state);
    std::copy(row.begin(), row.end(), probs.begin());
    return;
  }
  markov_->Evaluate(grid_.time(k), state, m, probs);
}

}  // namespace mfg
