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

#ifndef MFG_SCENARIOS_H_
#define MFG_SCENARIOS_H_

#include <optional>
#include <string>
#include <vector>

#include "mfg/game.h"
#include "mfg/strategy.h"
#include "mfg/time_grid.h"

namespace mfg {

struct ScenarioOptions {
  // Discount rate beta (continuous) or factor delta (discrete).
  std::optional<double> discount;
  // Finite horizon T; switches discounted scenarios to a finite horizon.
  std::optional<double> horizon;
};

// Strategy names understood for every game:
//   uniform               uniform over actions
//   always:<action>       action label or 1-based index
// Catalog scenarios add their own (see ScenarioStrategyNames).
Strategy ResolveStrategy(const GameSpec& spec, const std::string& name,
                         const TimeGrid& grid);

// Built-in games:
//   prisoner-mfg   states/actions {C, D}, action a moves the player to state
//                  a at rate 1; c_C = m_C + 3 m_D, c_D = 2 m_D; beta = 0.5.
//   punish-finite  discrete, states/actions {C, D, P}, the 3x3 punishment
//                  cost table, T = 10, everyone starts in C.
//   folk-repeated  discrete repeated prisoner's dilemma, state = action in
//                  force, c_C = -2 m_C, c_D = -3 m_C - m_D, delta = 0.9,
//                  everyone starts in D.
//   nonexistence   states {1, 2}, actions {a, b}, Q_a = 0,
//                  Q_b = [[-1, 1], [0, 0]], c_a = 0,
//                  c_b = -1 if m_2 <= 1/2 else 1 (discontinuous); beta = 1.
//   sir-demo       S/I/R epidemic with optional distancing.
// Throws ValidationError for an unknown name.
GameSpec ScenarioSpec(const std::string& name,
                      const ScenarioOptions& options = {});

std::vector<std::string> ScenarioNames();

// Scenario-specific strategy names (beyond uniform and always:<a>):
//   prisoner-mfg   always-C, always-D, switch-at:<s>, markov-grim
//   punish-finite  punish
//   folk-repeated  always-C, always-D, grim:<k>, markov-grim:<k>
//   nonexistence   never-switch, switch-at:<tau>
//   sir-demo       distance-above:<level>
std::vector<std::string> ScenarioStrategyNames(const std::string& scenario);

// Scenario strategies first, then the generic names.
Strategy ResolveScenarioStrategy(const std::string& scenario,
                                 const GameSpec& spec, const std::string& name,
                                 const TimeGrid& grid);

}  // namespace mfg

#endif  // MFG_SCENARIOS_H_
