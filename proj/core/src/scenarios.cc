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

#include "mfg/scenarios.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "mfg/errors.h"

namespace mfg {
namespace {

constexpr int kC = 0;
constexpr int kD = 1;
constexpr int kP = 2;

double ParseNumber(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("bad number '" + text + "' in " + what);
  }
  return v;
}

// Splits "head:arg"; arg is empty when there is no colon.
std::pair<std::string, std::string> SplitName(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) return {name, ""};
  return {name.substr(0, colon), name.substr(colon + 1)};
}

int ActionIndex(const GameSpec& spec, const std::string& token) {
  for (int a = 0; a < static_cast<int>(spec.action_labels.size()); ++a) {
    if (spec.action_labels[a] == token) return a;
  }
  int index = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), index);
  if (ec == std::errc() && ptr == token.data() + token.size() && index >= 1 &&
      index <= spec.n_actions) {
    return index - 1;
  }
  throw ValidationError("unknown action '" + token + "'");
}

// Pure local strategy: action(t_k, state) on every interval of `grid`.
template <typename F>
LocalStrategy PureByTime(const GameSpec& spec, const TimeGrid& grid, F action) {
  std::vector<int> actions;
  for (int k = 0; k < grid.steps(); ++k) {
    for (int i = 0; i < spec.n_states; ++i) {
      actions.push_back(action(grid.time(k), i));
    }
  }
  return LocalStrategy::Pure(grid, spec.n_states, spec.n_actions, actions);
}

void SetHorizon(GameSpec& spec, const ScenarioOptions& options,
                double default_discount) {
  if (options.horizon) {
    spec.horizon = Horizon::Finite(*options.horizon);
  } else {
    spec.horizon = Horizon::Discounted(options.discount.value_or(default_discount));
  }
}

// Rate-1 move to the state named by the action.
std::vector<double> MoveToActionRates(int n) {
  std::vector<double> base(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) {
      if (a == i) continue;
      base[(static_cast<std::size_t>(i) * n + a) * n + a] = 1.0;
      base[(static_cast<std::size_t>(i) * n + i) * n + a] = -1.0;
    }
  }
  return base;
}

// P_ija = [j == a].
std::vector<double> MoveToActionKernel(int n) {
  std::vector<double> base(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) {
      base[(static_cast<std::size_t>(i) * n + a) * n + a] = 1.0;
    }
  }
  return base;
}

// c_ia(m) = sum_k table[i][k] m_k for every action a.
SimplexField StateCosts(int n, int n_actions,
                        const std::vector<std::vector<double>>& table) {
  std::vector<double> base(static_cast<std::size_t>(n) * n_actions, 0.0);
  std::vector<double> slope(base.size() * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n_actions; ++a) {
      for (int k = 0; k < n; ++k) {
        slope[(static_cast<std::size_t>(i) * n_actions + a) * n + k] =
            table[i][k];
      }
    }
  }
  return SimplexField::Affine(n, std::move(base), std::move(slope));
}

GameSpec Prisoner(const ScenarioOptions& options) {
  GameSpec spec;
  spec.name = "prisoner-mfg";
  spec.n_states = spec.n_actions = 2;
  spec.state_labels = spec.action_labels = {"C", "D"};
  spec.time_mode = TimeMode::kContinuous;
  spec.transitions = SimplexField::Affine(2, MoveToActionRates(2));
  spec.costs = StateCosts(2, 2, {{1.0, 3.0}, {0.0, 2.0}});
  SetHorizon(spec, options, 0.5);
  spec.m0 = {1.0, 0.0};
  return spec;
}

GameSpec PunishFinite(const ScenarioOptions& options) {
  GameSpec spec;
  spec.name = "punish-finite";
  spec.n_states = spec.n_actions = 3;
  spec.state_labels = spec.action_labels = {"C", "D", "P"};
  spec.time_mode = TimeMode::kDiscrete;
  spec.transitions = SimplexField::Affine(3, MoveToActionKernel(3));
  spec.costs = StateCosts(3, 3, {{1.0, 3.0, 4.0},
                                 {0.0, 2.0, 4.0},
                                 {0.0, 3.0, 3.0}});
  if (options.discount && !options.horizon) {
    spec.horizon = Horizon::Discounted(*options.discount);
  } else {
    spec.horizon = Horizon::Finite(options.horizon.value_or(10.0));
  }
  spec.m0 = {1.0, 0.0, 0.0};
  return spec;
}

GameSpec FolkRepeated(const ScenarioOptions& options) {
  GameSpec spec;
  spec.name = "folk-repeated";
  spec.n_states = spec.n_actions = 2;
  spec.state_labels = spec.action_labels = {"C", "D"};
  spec.time_mode = TimeMode::kDiscrete;
  spec.transitions = SimplexField::Affine(2, MoveToActionKernel(2));
  spec.costs = StateCosts(2, 2, {{-2.0, 0.0}, {-3.0, -1.0}});
  SetHorizon(spec, options, 0.9);
  spec.m0 = {0.0, 1.0};
  return spec;
}

GameSpec Nonexistence(const ScenarioOptions& options) {
  GameSpec spec;
  spec.name = "nonexistence";
  spec.n_states = spec.n_actions = 2;
  spec.state_labels = {"1", "2"};
  spec.action_labels = {"a", "b"};
  spec.time_mode = TimeMode::kContinuous;
  std::vector<double> q(8, 0.0);
  q[spec.TransitionIndex(0, 0, 1)] = -1.0;
  q[spec.TransitionIndex(0, 1, 1)] = 1.0;
  spec.transitions = SimplexField::Affine(2, std::move(q));
  spec.costs = SimplexField::FromEvaluator(
      2, 4, [](std::span<const double> m, std::span<double> out) {
        const double cb = m[1] <= 0.5 ? -1.0 : 1.0;
        out[0] = 0.0;
        out[1] = cb;
        out[2] = 0.0;
        out[3] = cb;
      });
  spec.discontinuous_cost = true;
  SetHorizon(spec, options, 1.0);
  spec.m0 = {1.0, 0.0};
  return spec;
}

GameSpec Sir(const ScenarioOptions& options) {
  constexpr int S = 0, I = 1, R = 2;
  GameSpec spec;
  spec.name = "sir-demo";
  spec.n_states = 3;
  spec.n_actions = 2;
  spec.state_labels = {"S", "I", "R"};
  spec.action_labels = {"normal", "distance"};
  spec.time_mode = TimeMode::kContinuous;
  const double contact[2] = {3.0, 1.0};
  std::vector<double> base(spec.transition_dim(), 0.0);
  std::vector<double> slope(spec.transition_dim() * 3, 0.0);
  for (int a = 0; a < 2; ++a) {
    slope[spec.TransitionIndex(S, I, a) * 3 + I] = contact[a];
    slope[spec.TransitionIndex(S, S, a) * 3 + I] = -contact[a];
    base[spec.TransitionIndex(I, R, a)] = 1.0;
    base[spec.TransitionIndex(I, I, a)] = -1.0;
    base[spec.TransitionIndex(R, S, a)] = 0.2;
    base[spec.TransitionIndex(R, R, a)] = -0.2;
  }
  spec.transitions =
      SimplexField::Affine(3, std::move(base), std::move(slope));
  std::vector<double> cost(spec.cost_dim(), 0.0);
  for (int i = 0; i < 3; ++i) {
    cost[spec.CostIndex(i, 1)] += 0.3;
    if (i == I) {
      cost[spec.CostIndex(i, 0)] += 1.0;
      cost[spec.CostIndex(i, 1)] += 1.0;
    }
  }
  spec.costs = SimplexField::Affine(3, std::move(cost));
  SetHorizon(spec, options, 0.5);
  spec.m0 = {0.99, 0.01, 0.0};
  return spec;
}

void Assign(std::span<double> probs, int action) {
  std::fill(probs.begin(), probs.end(), 0.0);
  probs[action] = 1.0;
}

}  // namespace

Strategy ResolveStrategy(const GameSpec& spec, const std::string& name,
                         const TimeGrid& grid) {
  const auto [head, arg] = SplitName(name);
  if (name == "uniform") {
    return LocalStrategy::Uniform(grid, spec.n_states, spec.n_actions);
  }
  if (head == "always" && !arg.empty()) {
    return LocalStrategy::Always(grid, spec.n_states, spec.n_actions,
                                 ActionIndex(spec, arg));
  }
  throw ValidationError("unknown strategy '" + name + "'");
}

GameSpec ScenarioSpec(const std::string& name, const ScenarioOptions& options) {
  if (name == "prisoner-mfg") return Prisoner(options);
  if (name == "punish-finite") return PunishFinite(options);
  if (name == "folk-repeated") return FolkRepeated(options);
  if (name == "nonexistence") return Nonexistence(options);
  if (name == "sir-demo") return Sir(options);
  std::string known;
  for (const auto& s : ScenarioNames()) known += " " + s;
  throw ValidationError("unknown scenario '" + name + "' (known:" + known +
                        ")");
}

std::vector<std::string> ScenarioNames() {
  return {"prisoner-mfg", "punish-finite", "folk-repeated", "nonexistence",
          "sir-demo"};
}

std::vector<std::string> ScenarioStrategyNames(const std::string& scenario) {
  if (scenario == "prisoner-mfg") {
    return {"always-C", "always-D", "switch-at:<s>", "markov-grim"};
  }
  if (scenario == "punish-finite") return {"punish"};
  if (scenario == "folk-repeated") {
    return {"always-C", "always-D", "grim:<k>", "markov-grim:<k>"};
  }
  if (scenario == "nonexistence") return {"never-switch", "switch-at:<tau>"};
  if (scenario == "sir-demo") return {"distance-above:<level>"};
  return {};
}

Strategy ResolveScenarioStrategy(const std::string& scenario,
                                 const GameSpec& spec, const std::string& name,
                                 const TimeGrid& grid) {
  const auto [head, arg] = SplitName(name);
  const int n = spec.n_states;
  const int na = spec.n_actions;
  // Interval starting at t lies before s (round-off tolerant).
  auto before = [](double t, double s) { return t < s - 1e-9; };

  if (scenario == "prisoner-mfg" || scenario == "folk-repeated") {
    if (name == "always-C") return LocalStrategy::Always(grid, n, na, kC);
    if (name == "always-D") return LocalStrategy::Always(grid, n, na, kD);
  }
  if (scenario == "prisoner-mfg") {
    if (head == "switch-at" && !arg.empty()) {
      const double s = ParseNumber(arg, name);
      return PureByTime(spec, grid, [&](double t, int) {
        return before(t, s) ? kC : kD;
      });
    }
    if (name == "markov-grim") {
      return MarkovStrategy(
          n, na,
          [](double, int, std::span<const double> m, std::span<double> p) {
            Assign(p, m[kC] == 1.0 ? kC : kD);
          },
          name);
    }
  }
  if (scenario == "folk-repeated") {
    if ((head == "grim" || head == "markov-grim") && !arg.empty()) {
      const double k = ParseNumber(arg, name);
      if (k < 1 || k != std::floor(k)) {
        throw ValidationError("grim trigger needs an integer k >= 1");
      }
      if (head == "grim") {
        return PureByTime(spec, grid, [&](double t, int) {
          return t < k - 1 - 1e-9 ? kD : kC;
        });
      }
      // Cooperates from round k - 1 on as long as the population followed
      // the schedule (all D before round k, all C after).
      return MarkovStrategy(
          n, na,
          [k](double t, int, std::span<const double> m, std::span<double> p) {
            const bool on_schedule = t < k - 1e-9 ? m[kD] == 1.0 : m[kC] == 1.0;
            Assign(p, t >= k - 1 - 1e-9 && on_schedule ? kC : kD);
          },
          name);
    }
  }
  if (scenario == "punish-finite" && name == "punish") {
    return MarkovStrategy(
        n, na,
        [](double t, int, std::span<const double> m, std::span<double> p) {
          if (t < 1.0 && m[kC] == 1.0) {
            Assign(p, kC);
          } else if (t >= 1.0 && m[kP] == 0.0) {
            Assign(p, kD);
          } else {
            Assign(p, kP);
          }
        },
        name);
  }
  if (scenario == "nonexistence") {
    if (name == "never-switch") return LocalStrategy::Always(grid, n, na, 1);
    if (head == "switch-at" && !arg.empty()) {
      const double tau = ParseNumber(arg, name);
      return PureByTime(spec, grid, [&](double t, int) {
        return before(t, tau) ? 1 : 0;
      });
    }
  }
  if (scenario == "sir-demo" && head == "distance-above" && !arg.empty()) {
    const double level = ParseNumber(arg, name);
    return MarkovStrategy(
        n, na,
        [level](double, int, std::span<const double> m, std::span<double> p) {
          Assign(p, m[1] > level ? 1 : 0);
        },
        name);
  }
  return ResolveStrategy(spec, name, grid);
}

}  // namespace mfg
