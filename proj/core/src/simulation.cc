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

#include "mfg/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <thread>
#include <utility>

#include "mfg/cost.h"
#include "mfg/errors.h"
#include "mfg/rng.h"
#include "mfg/validate.h"

namespace mfg {

std::vector<double> SimTrace::M(int record) const {
  std::vector<double> m(n_states);
  for (int j = 0; j < n_states; ++j) {
    m[j] = static_cast<double>(
               counts[static_cast<std::size_t>(record) * n_states + j]) /
           n_players;
  }
  return m;
}

std::vector<int> InitialCounts(std::span<const double> m0, int n_players) {
  const int n = static_cast<int>(m0.size());
  std::vector<int> counts(n);
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (int j = 0; j < n; ++j) {
    const double exact = m0[j] * n_players;
    counts[j] = static_cast<int>(std::floor(exact));
    assigned += counts[j];
    remainders.push_back({exact - counts[j], j});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int r = 0; assigned < n_players; ++r, ++assigned) {
    ++counts[remainders[r % n].second];
  }
  return counts;
}

namespace {

void CheckConfig(const GameSpec& spec, const SimConfig& config,
                 const StrategyProfile& profile) {
  if (config.n_players < 1) throw ValidationError("need at least one player");
  if (config.replications < 1) {
    throw ValidationError("need at least one replication");
  }
  auto check = [&](const Strategy& s, const char* who) {
    if (StrategyStates(s) != spec.n_states ||
        StrategyActions(s) != spec.n_actions) {
      throw ValidationError(std::string(who) +
                            " strategy shape does not match the game");
    }
  };
  check(profile.population, "population");
  if (profile.deviation) check(*profile.deviation, "deviation");
  if (!config.stream_ids.empty()) {
    std::vector<int> sorted = config.stream_ids;
    std::sort(sorted.begin(), sorted.end());
    for (int n = 0; n < config.n_players; ++n) {
      if (static_cast<int>(sorted.size()) != config.n_players ||
          sorted[n] != n) {
        throw ValidationError("stream_ids must be a permutation of 0..N-1");
      }
    }
  }
}

// Per-player streams (stream 0 is reserved for the initial allocation) and
// initial states.
struct Players {
  std::vector<Rng> rng;
  std::vector<int> state;
};

Players MakePlayers(const GameSpec& spec, const SimConfig& config,
                    std::uint64_t seed) {
  const int n_players = config.n_players;
  std::vector<int> slots;
  const std::vector<int> counts = InitialCounts(spec.m0, n_players);
  for (int j = 0; j < spec.n_states; ++j) slots.insert(slots.end(), counts[j], j);
  Rng setup(seed, 0);
  for (int r = n_players - 1; r > 0; --r) {
    const int s = static_cast<int>(setup.Uniform() * (r + 1));
    std::swap(slots[r], slots[std::min(s, r)]);
  }
  Players players;
  players.rng.reserve(n_players);
  players.state.resize(n_players);
  for (int n = 0; n < n_players; ++n) {
    const int id = config.stream_ids.empty() ? n : config.stream_ids[n];
    players.rng.emplace_back(seed, static_cast<std::uint64_t>(id) + 1);
    players.state[n] = slots[id];
  }
  return players;
}

SimTrace NewTrace(const GameSpec& spec, const SimConfig& config) {
  SimTrace trace;
  trace.n_players = config.n_players;
  trace.n_states = spec.n_states;
  return trace;
}

void Record(SimTrace& trace, double t, int player, int new_state,
            const std::vector<int>& counts, int player0_state) {
  trace.times.push_back(t);
  trace.event_player.push_back(player);
  trace.new_state.push_back(new_state);
  trace.counts.insert(trace.counts.end(), counts.begin(), counts.end());
  trace.player0_state.push_back(player0_state);
}

std::vector<double> Fractions(const std::vector<int>& counts, int n_players) {
  std::vector<double> m(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    m[j] = static_cast<double>(counts[j]) / n_players;
  }
  return m;
}

// Players sharing a strategy class (player 0 or the rest) and a state jump
// at the same per-player rate. `acc` is the intensity integrated by one
// member since the start; a member fires when acc reaches its key.
struct Group {
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  double acc = 0.0;
  double rate = 0.0;
  std::vector<double> probs;
  std::vector<double> exit;
};

}  // namespace

SimTrace SimulateCtmc(const GameSpec& spec, const SimConfig& config,
                      const StrategyProfile& profile, int replication) {
  RequireValid(spec);
  if (!spec.continuous()) {
    throw ValidationError("SimulateCtmc needs a continuous-time game");
  }
  CheckConfig(spec, config, profile);
  const TimeGrid grid = config.grid ? *config.grid : DefaultGrid(spec);
  CheckHorizonGrid(spec, grid);
  const int n_players = config.n_players;
  const int n = spec.n_states;
  const int na = spec.n_actions;
  const BoundStrategy bound[2] = {BoundStrategy(profile.player0(), grid),
                                  BoundStrategy(profile.population, grid)};
  Players players = MakePlayers(spec, config, config.seed + replication);
  std::vector<int>& state = players.state;
  std::vector<int> counts(n, 0);
  for (int s : state) ++counts[s];

  std::vector<Group> groups(2 * n);
  for (Group& g : groups) {
    g.probs.resize(na);
    g.exit.resize(na);
  }
  auto group_of = [&](int player, int s) {
    return (player == 0 ? 0 : n) + s;
  };
  for (int p = 0; p < n_players; ++p) {
    groups[group_of(p, state[p])].heap.push(
        {players.rng[p].Exponential(), p});
  }

  const double beta = spec.horizon.discounted() ? spec.horizon.value : 0.0;
  std::vector<double> q(spec.transition_dim());
  std::vector<double> c(spec.cost_dim());
  double cost_rate = 0.0;

  auto recompute = [&](int k) {
    const std::vector<double> m = Fractions(counts, n_players);
    spec.transitions.Evaluate(m, q);
    spec.costs.Evaluate(m, c);
    for (int g = 0; g < 2 * n; ++g) {
      Group& grp = groups[g];
      grp.rate = 0.0;
      if (grp.heap.empty()) continue;
      const int s = g % n;
      bound[g / n].Probabilities(k, s, m, grp.probs);
      for (int a = 0; a < na; ++a) {
        double out = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j != s) out += q[spec.TransitionIndex(s, j, a)];
        }
        grp.exit[a] = out;
        grp.rate += grp.probs[a] * out;
      }
    }
    const Group& own = groups[group_of(0, state[0])];
    cost_rate = 0.0;
    for (int a = 0; a < na; ++a) {
      cost_rate += own.probs[a] * c[spec.CostIndex(state[0], a)];
    }
  };

  SimTrace trace = NewTrace(spec, config);
  Record(trace, 0.0, -1, -1, counts, state[0]);
  double t = 0.0;
  auto advance = [&](double dt) {
    for (Group& grp : groups) grp.acc += grp.rate * dt;
    const double weight =
        beta > 0.0 ? std::exp(-beta * t) * -std::expm1(-beta * dt) / beta : dt;
    trace.player0_cost += cost_rate * weight;
    t += dt;
  };

  int k = 0;
  recompute(k);
  std::vector<double> weights(std::max(n, na));
  while (true) {
    double best_dt = std::numeric_limits<double>::infinity();
    int best = -1;
    for (int g = 0; g < 2 * n; ++g) {
      const Group& grp = groups[g];
      if (grp.heap.empty() || !(grp.rate > 0.0)) continue;
      const double dt = std::max(0.0, (grp.heap.top().first - grp.acc) / grp.rate);
      if (dt < best_dt) {
        best_dt = dt;
        best = g;
      }
    }
    const double boundary = grid.time(k + 1);
    if (best < 0 || t + best_dt >= boundary) {
      advance(boundary - t);
      t = boundary;
      if (++k == grid.steps()) break;
      recompute(k);
      continue;
    }
    advance(best_dt);
    Group& grp = groups[best];
    const int player = grp.heap.top().second;
    grp.heap.pop();
    const int from = state[player];
    Rng& rng = players.rng[player];
    for (int a = 0; a < na; ++a) weights[a] = grp.probs[a] * grp.exit[a];
    const int action = rng.Categorical(std::span<const double>(weights.data(), na));
    for (int j = 0; j < n; ++j) {
      weights[j] = j == from ? 0.0 : q[spec.TransitionIndex(from, j, action)];
    }
    const int to = rng.Categorical(std::span<const double>(weights.data(), n));
    state[player] = to;
    --counts[from];
    ++counts[to];
    Group& dest = groups[group_of(player, to)];
    dest.heap.push({dest.acc + rng.Exponential(), player});
    ++trace.events;
    if (config.record_trace) Record(trace, t, player, to, counts, state[0]);
    recompute(k);
  }
  trace.tail_bound = TruncationTailBound(spec, grid);
  return trace;
}

SimTrace SimulateSync(const GameSpec& spec, const SimConfig& config,
                      const StrategyProfile& profile, int replication) {
  RequireValid(spec);
  if (spec.continuous()) {
    throw ValidationError("SimulateSync needs a discrete-time game");
  }
  CheckConfig(spec, config, profile);
  const TimeGrid grid = config.grid ? *config.grid : DefaultGrid(spec);
  CheckHorizonGrid(spec, grid);
  const int n_players = config.n_players;
  const int n = spec.n_states;
  const int na = spec.n_actions;
  const BoundStrategy bound[2] = {BoundStrategy(profile.player0(), grid),
                                  BoundStrategy(profile.population, grid)};
  Players players = MakePlayers(spec, config, config.seed + replication);
  std::vector<int>& state = players.state;
  std::vector<int> counts(n, 0);
  for (int s : state) ++counts[s];

  const double gamma = spec.horizon.discounted() ? spec.horizon.value : 1.0;
  const double weight = DiscreteCostWeight(spec);
  std::vector<double> p(spec.transition_dim());
  std::vector<double> c(spec.cost_dim());
  // probs[(cls * E + state) * A + a]
  std::vector<double> probs(2 * static_cast<std::size_t>(n) * na);
  std::vector<double> row(n);

  SimTrace trace = NewTrace(spec, config);
  Record(trace, 0.0, -1, -1, counts, state[0]);
  double discount = 1.0;
  for (int k = 0; k < grid.steps(); ++k) {
    const std::vector<double> m = Fractions(counts, n_players);
    spec.transitions.Evaluate(m, p);
    spec.costs.Evaluate(m, c);
    for (int cls = 0; cls < 2; ++cls) {
      for (int s = 0; s < n; ++s) {
        bound[cls].Probabilities(
            k, s, m,
            std::span<double>(probs.data() + (static_cast<std::size_t>(cls) * n + s) * na,
                              na));
      }
    }
    double stage = 0.0;
    for (int a = 0; a < na; ++a) {
      stage += probs[static_cast<std::size_t>(state[0]) * na + a] *
               c[spec.CostIndex(state[0], a)];
    }
    trace.player0_cost += weight * discount * stage;
    discount *= gamma;

    for (int player = 0; player < n_players; ++player) {
      const int cls = player == 0 ? 0 : 1;
      const int from = state[player];
      Rng& rng = players.rng[player];
      const int action = rng.Categorical(std::span<const double>(
          probs.data() + (static_cast<std::size_t>(cls) * n + from) * na, na));
      for (int j = 0; j < n; ++j) {
        row[j] = p[spec.TransitionIndex(from, j, action)];
      }
      state[player] = rng.Categorical(row);
    }
    std::fill(counts.begin(), counts.end(), 0);
    for (int s : state) ++counts[s];
    ++trace.events;
    if (config.record_trace) {
      Record(trace, grid.time(k + 1), -1, -1, counts, state[0]);
    }
  }
  trace.tail_bound = TruncationTailBound(spec, grid);
  return trace;
}

SimTrace Simulate(const GameSpec& spec, const SimConfig& config,
                  const StrategyProfile& profile, int replication) {
  return spec.continuous() ? SimulateCtmc(spec, config, profile, replication)
                           : SimulateSync(spec, config, profile, replication);
}

double SupDeviation(const SimTrace& trace, const PopulationPath& mpath) {
  const int n = trace.n_states;
  const TimeGrid& grid = mpath.grid();
  std::vector<double> m(n);
  double sup = 0.0;
  auto compare = [&](int record, std::span<const double> ref) {
    for (int j = 0; j < n; ++j) {
      const double frac =
          static_cast<double>(
              trace.counts[static_cast<std::size_t>(record) * n + j]) /
          trace.n_players;
      sup = std::max(sup, std::abs(frac - ref[j]));
    }
  };
  int r = 0;
  for (int k = 0; k <= grid.steps(); ++k) {
    const double t = grid.time(k);
    while (r + 1 < trace.records() && trace.times[r + 1] <= t) {
      ++r;
      mpath.Interpolate(trace.times[r], m);
      compare(r - 1, m);
      compare(r, m);
    }
    compare(r, mpath.At(k));
  }
  return sup;
}

CostEstimate Summarize(std::span<const double> samples) {
  CostEstimate est;
  est.replications = static_cast<int>(samples.size());
  if (samples.empty()) return est;
  double sum = 0.0;
  for (double x : samples) sum += x;
  est.mean = sum / samples.size();
  if (std::all_of(samples.begin(), samples.end(),
                  [&](double x) { return x == samples[0]; })) {
    est.mean = samples[0];
  }
  if (samples.size() >= 2) {
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    const double sd = std::sqrt(ss / (samples.size() - 1));
    est.std_error = sd / std::sqrt(static_cast<double>(samples.size()));
    est.ci95 = 1.96 * *est.std_error;
  }
  return est;
}

void ForEachReplication(int replications, int threads,
                        const std::function<void(int)>& fn) {
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  auto work = [&] {
    for (int r = next++; r < replications && !failed; r = next++) {
      try {
        fn(r);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, std::max(replications, 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> ReplicateCosts(const GameSpec& spec,
                                   const SimConfig& config,
                                   const StrategyProfile& profile) {
  SimConfig quiet = config;
  quiet.record_trace = false;
  std::vector<double> costs(config.replications);
  ForEachReplication(config.replications, config.threads, [&](int r) {
    costs[r] = Simulate(spec, quiet, profile, r).player0_cost;
  });
  return costs;
}

std::vector<double> ReplicateSupDeviation(const GameSpec& spec,
                                          const SimConfig& config,
                                          const StrategyProfile& profile,
                                          const PopulationPath& mpath) {
  SimConfig full = config;
  full.record_trace = true;
  std::vector<double> sup(config.replications);
  ForEachReplication(config.replications, config.threads, [&](int r) {
    sup[r] = SupDeviation(Simulate(spec, full, profile, r), mpath);
  });
  return sup;
}

CostEstimate EstimateValue(const GameSpec& spec, const SimConfig& config,
                           const StrategyProfile& profile) {
  if (config.replications < 2) {
    throw ValidationError("a cost estimate needs at least 2 replications");
  }
  return Summarize(ReplicateCosts(spec, config, profile));
}

DeviationReport DeviationTest(const GameSpec& spec, const SimConfig& config,
                              const Strategy& pi,
                              const std::vector<NamedStrategy>& deviations) {
  if (deviations.empty()) throw ValidationError("no deviations to test");
  if (config.replications < 2) {
    throw ValidationError("a deviation test needs at least 2 replications");
  }
  const std::vector<double> base = ReplicateCosts(spec, config, {pi, {}});
  DeviationReport report;
  report.baseline = Summarize(base);
  report.max_gain = -std::numeric_limits<double>::infinity();
  report.max_gain_upper = -std::numeric_limits<double>::infinity();
  for (const NamedStrategy& dev : deviations) {
    const std::vector<double> costs =
        ReplicateCosts(spec, config, {pi, dev.strategy});
    std::vector<double> gains(costs.size());
    for (std::size_t r = 0; r < costs.size(); ++r) gains[r] = base[r] - costs[r];
    DeviationResult result{dev.name, Summarize(costs), Summarize(gains)};
    if (result.gain.mean > report.max_gain) {
      report.max_gain = result.gain.mean;
      report.argmax = dev.name;
    }
    report.max_gain_upper =
        std::max(report.max_gain_upper, result.gain.mean + *result.gain.ci95);
    report.deviations.push_back(std::move(result));
  }
  return report;
}

}  // namespace mfg
