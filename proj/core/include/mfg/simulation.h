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

#ifndef MFG_SIMULATION_H_
#define MFG_SIMULATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"
#include "mfg/time_grid.h"

namespace mfg {

struct SimConfig {
  int n_players = 100;
  std::uint64_t seed = 0;
  int replications = 1;
  // Worker threads for replications; results do not depend on it.
  int threads = 1;
  // Strategy grid; the simulation horizon is [0, t_end] (continuous) or the
  // epochs 0..steps-1 (discrete). Defaults to DefaultGrid(spec).
  std::optional<TimeGrid> grid;
  bool record_trace = true;
  // Optional permutation: player n draws from RNG stream stream_ids[n] and
  // takes that stream's initial state. Identity by default.
  std::vector<int> stream_ids;
};

// Players 1..N-1 use `population`; player 0 uses `deviation` when set.
struct StrategyProfile {
  Strategy population;
  std::optional<Strategy> deviation;

  const Strategy& player0() const {
    return deviation ? *deviation : population;
  }
};

struct SimTrace {
  int n_players = 0;
  int n_states = 0;
  // One record per event (continuous) or per epoch (discrete); the first
  // record is the initial configuration.
  std::vector<double> times;
  std::vector<int> event_player;  // -1 when no single player moved
  std::vector<int> new_state;     // -1 when no single player moved
  std::vector<int> counts;        // [record * E + state]
  std::vector<int> player0_state;
  // Discounted (or finite-horizon) cost of player 0, expected over its own
  // action draws given the realized states.
  double player0_cost = 0.0;
  double tail_bound = 0.0;
  std::int64_t events = 0;

  int records() const { return static_cast<int>(times.size()); }
  std::vector<double> M(int record) const;
};

// Initial counts by largest remainder of N m0 (ties to the lower state).
std::vector<int> InitialCounts(std::span<const double> m0, int n_players);

// Exact event-driven simulation of the asynchronous N-player game for
// replication `replication` (seed + replication). Every player owns a unit
// exponential clock on its own integrated jump intensity; intensities are
// constant between events and strategy-grid boundaries, where they are
// recomputed. At a jump the player's action is drawn with probability
// proportional to pi_a(t_k, i, M) times its exit rate, then the destination
// proportionally to the off-diagonal rates of that action.
SimTrace SimulateCtmc(const GameSpec& spec, const SimConfig& config,
                      const StrategyProfile& profile, int replication = 0);

// Synchronous discrete-time game: each step every player draws an action,
// then a next state from P(M(t)), using its own stream.
SimTrace SimulateSync(const GameSpec& spec, const SimConfig& config,
                      const StrategyProfile& profile, int replication = 0);

// Dispatches on the spec's time mode.
SimTrace Simulate(const GameSpec& spec, const SimConfig& config,
                  const StrategyProfile& profile, int replication = 0);

// sup_t |M(t) - m(t)|_inf, checked at every grid point of `mpath` and on both
// sides of every event.
double SupDeviation(const SimTrace& trace, const PopulationPath& mpath);

struct CostEstimate {
  double mean = 0.0;
  // Sample standard deviation / sqrt(R); absent when R < 2.
  std::optional<double> std_error;
  // 1.96 std_error.
  std::optional<double> ci95;
  int replications = 0;
};

CostEstimate Summarize(std::span<const double> samples);

// Calls fn(r) for r = 0..replications-1 on up to `threads` workers. The first
// exception thrown by fn is rethrown after all workers stop.
void ForEachReplication(int replications, int threads,
                        const std::function<void(int)>& fn);

// Player-0 costs of config.replications independent runs, in replication
// order. Runs in parallel on config.threads workers.
std::vector<double> ReplicateCosts(const GameSpec& spec,
                                   const SimConfig& config,
                                   const StrategyProfile& profile);

// sup_t |M(t) - m(t)| of every replication against `mpath`.
std::vector<double> ReplicateSupDeviation(const GameSpec& spec,
                                          const SimConfig& config,
                                          const StrategyProfile& profile,
                                          const PopulationPath& mpath);

// Monte Carlo estimate of V^N for player 0. Needs R >= 2.
CostEstimate EstimateValue(const GameSpec& spec, const SimConfig& config,
                           const StrategyProfile& profile);

struct NamedStrategy {
  std::string name;
  Strategy strategy;
};

struct DeviationResult {
  std::string name;
  CostEstimate value;
  // Paired differences V(pi, pi) - V(pi', pi) under common random numbers.
  CostEstimate gain;
};

struct DeviationReport {
  CostEstimate baseline;
  std::vector<DeviationResult> deviations;
  double max_gain = 0.0;
  // max over deviations of gain + ci95.
  double max_gain_upper = 0.0;
  std::string argmax;
};

// Estimates how much player 0 can gain by deviating from `pi` to each of
// `deviations` while the other N - 1 players keep `pi`. Every deviation
// reuses the baseline's seeds. Needs R >= 2 and a nonempty deviation list.
DeviationReport DeviationTest(const GameSpec& spec, const SimConfig& config,
                              const Strategy& pi,
                              const std::vector<NamedStrategy>& deviations);

}  // namespace mfg

#endif  // MFG_SIMULATION_H_
