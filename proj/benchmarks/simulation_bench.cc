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

#include <benchmark/benchmark.h>

#include "mfg/scenarios.h"
#include "mfg/simulation.h"

namespace mfg {
namespace {

void BM_SimulateCtmc(benchmark::State& state) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid = DefaultGrid(spec);
  SimConfig config;
  config.n_players = static_cast<int>(state.range(0));
  config.grid = grid;
  config.record_trace = false;
  const StrategyProfile profile{LocalStrategy::Always(grid, 2, 2, 1), {}};
  int replication = 0;
  std::int64_t events = 0;
  for (auto _ : state) {
    const SimTrace t = SimulateCtmc(spec, config, profile, replication++);
    events += t.events;
  }
  state.SetItemsProcessed(events);
}
BENCHMARK(BM_SimulateCtmc)->Range(10, 10000)->Unit(benchmark::kMicrosecond);

void BM_SimulateSir(benchmark::State& state) {
  const GameSpec spec = ScenarioSpec("sir-demo");
  const TimeGrid grid(30.0, 300);
  SimConfig config;
  config.n_players = static_cast<int>(state.range(0));
  config.grid = grid;
  config.record_trace = false;
  const StrategyProfile profile{
      ResolveScenarioStrategy("sir-demo", spec, "distance-above:0.05", grid),
      {}};
  int replication = 0;
  std::int64_t events = 0;
  for (auto _ : state) {
    const SimTrace t = SimulateCtmc(spec, config, profile, replication++);
    events += t.events;
  }
  state.SetItemsProcessed(events);
}
BENCHMARK(BM_SimulateSir)->Range(100, 10000)->Unit(benchmark::kMicrosecond);

void BM_SimulateSync(benchmark::State& state) {
  const GameSpec spec = ScenarioSpec("folk-repeated");
  const TimeGrid grid = DefaultGrid(spec);
  SimConfig config;
  config.n_players = static_cast<int>(state.range(0));
  config.grid = grid;
  config.record_trace = false;
  const StrategyProfile profile{LocalStrategy::Uniform(grid, 2, 2), {}};
  int replication = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SimulateSync(spec, config, profile, replication++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * grid.steps());
}
BENCHMARK(BM_SimulateSync)->Range(10, 1000)->Unit(benchmark::kMicrosecond);

void BM_DeviationTest(benchmark::State& state) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid = DefaultGrid(spec);
  SimConfig config;
  config.n_players = 200;
  config.replications = 32;
  config.threads = static_cast<int>(state.range(0));
  config.grid = grid;
  const Strategy d = LocalStrategy::Always(grid, 2, 2, 1);
  const std::vector<NamedStrategy> devs = {
      {"always-C", LocalStrategy::Always(grid, 2, 2, 0)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(DeviationTest(spec, config, d, devs));
  }
}
BENCHMARK(BM_DeviationTest)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace
}  // namespace mfg
