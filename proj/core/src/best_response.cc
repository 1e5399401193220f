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

#include "mfg/best_response.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mfg/cost.h"
#include "mfg/errors.h"
#include "mfg/validate.h"

namespace mfg {

ValuePath::ValuePath(TimeGrid grid, int n_states, std::vector<double> values)
    : grid_(grid), n_states_(n_states), values_(std::move(values)) {
  if (values_.size() !=
      static_cast<std::size_t>(grid_.steps() + 1) * n_states_) {
    throw ValidationError("value path has the wrong number of entries");
  }
}

namespace {

bool Better(double candidate, double best) {
  return candidate < best - 1e-12 * std::max(1.0, std::abs(best));
}

void CheckPath(const GameSpec& spec, const PopulationPath& mpath) {
  if (mpath.n_states() != spec.n_states) {
    throw ValidationError("population path has " +
                          std::to_string(mpath.n_states()) +
                          " states, game has " +
                          std::to_string(spec.n_states));
  }
  for (int k = 0; k <= mpath.grid().steps(); ++k) {
    if (!IsProbabilityVector(mpath.At(k), 1e-9)) {
      throw ValidationError("population path leaves the simplex at t=" +
                            std::to_string(mpath.grid().time(k)));
    }
  }
  CheckHorizonGrid(spec, mpath.grid());
}

}  // namespace

BestResponseResult BestResponse(const GameSpec& spec,
                                const PopulationPath& mpath) {
  RequireValid(spec);
  CheckPath(spec, mpath);
  const TimeGrid& grid = mpath.grid();
  const int n = spec.n_states;
  const int na = spec.n_actions;
  const int steps = grid.steps();
  const bool continuous = spec.continuous();
  const double h = grid.step();
  double beta = 0.0;
  double gamma = 1.0;
  double weight = 1.0;
  if (continuous) {
    if (spec.horizon.discounted()) beta = spec.horizon.value;
    if (beta * h >= 1.0) {
      throw GridError("step " + std::to_string(h) +
                      " too large for discount rate " + std::to_string(beta) +
                      " (need beta h < 1)");
    }
  } else {
    if (spec.horizon.discounted()) gamma = spec.horizon.value;
    weight = DiscreteCostWeight(spec);
  }

  std::vector<double> v((static_cast<std::size_t>(steps) + 1) * n, 0.0);
  std::vector<int> actions(static_cast<std::size_t>(steps) * n, 0);
  std::vector<double> q(spec.transition_dim());
  std::vector<double> c(spec.cost_dim());
  std::vector<double> c_next(spec.cost_dim());
  if (continuous) spec.costs.Evaluate(mpath.At(steps), c_next);

  for (int k = steps - 1; k >= 0; --k) {
    spec.transitions.Evaluate(mpath.At(k), q);
    spec.costs.Evaluate(mpath.At(k), c);
    const double* next = v.data() + static_cast<std::size_t>(k + 1) * n;
    double* cur = v.data() + static_cast<std::size_t>(k) * n;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_a = 0;
      for (int a = 0; a < na; ++a) {
        double value;
        if (continuous) {
          double exit_rate = 0.0;
          double drift = 0.0;
          for (int j = 0; j < n; ++j) {
            const double rate = q[spec.TransitionIndex(i, j, a)];
            if (j != i) exit_rate += rate;
            drift += rate * next[j];
          }
          if (h * exit_rate > 1.0 + 1e-12) {
            throw GridError("step " + std::to_string(h) +
                            " too large for exit rate " +
                            std::to_string(exit_rate) + " in state " +
                            std::to_string(i + 1) + " (need h q <= 1)");
          }
          const double stage = 0.5 * h *
                               (c[spec.CostIndex(i, a)] +
                                c_next[spec.CostIndex(i, a)]);
          value = stage + (1.0 - beta * h) * (next[i] + h * drift);
        } else {
          double expect = 0.0;
          for (int j = 0; j < n; ++j) {
            expect += q[spec.TransitionIndex(i, j, a)] * next[j];
          }
          value = weight * c[spec.CostIndex(i, a)] + gamma * expect;
        }
        if (a == 0 || Better(value, best)) {
          best = value;
          best_a = a;
        }
      }
      cur[i] = best;
      actions[static_cast<std::size_t>(k) * n + i] = best_a;
    }
    std::swap(c, c_next);
  }
  return {LocalStrategy::Pure(grid, n, na, actions),
          ValuePath(grid, n, std::move(v))};
}

OracleResult BestResponseOracle(const GameSpec& spec,
                                const PopulationPath& mpath,
                                const TimeGrid& coarse, int threads) {
  RequireValid(spec);
  CheckPath(spec, mpath);
  mpath.grid().RefinementRatio(coarse);
  const int n = spec.n_states;
  const int na = spec.n_actions;
  const int slots = coarse.steps() * n;
  std::int64_t total = 1;
  for (int s = 0; s < slots; ++s) {
    total *= na;
    if (total > kOracleLimit) {
      throw ValidationError("oracle instance too large: " +
                            std::to_string(na) + "^" + std::to_string(slots) +
                            " candidates exceed " +
                            std::to_string(kOracleLimit));
    }
  }

  auto decode = [&](std::int64_t index) {
    std::vector<int> actions(slots);
    for (int s = slots - 1; s >= 0; --s) {
      actions[s] = static_cast<int>(index % na);
      index /= na;
    }
    return actions;
  };
  struct Best {
    std::int64_t index = -1;
    double cost = std::numeric_limits<double>::infinity();
  };
  auto scan = [&](std::int64_t begin, std::int64_t end) {
    Best best;
    for (std::int64_t idx = begin; idx < end; ++idx) {
      const Strategy candidate =
          LocalStrategy::Pure(coarse, n, na, decode(idx));
      const double cost = EvaluateCost(spec, candidate, mpath, spec.m0).value;
      if (best.index < 0 || cost < best.cost) best = {idx, cost};
    }
    return best;
  };

  const int workers = static_cast<int>(
      std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(total, 1)));
  std::vector<Best> partial(workers);
  if (workers == 1) {
    partial[0] = scan(0, total);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          partial[w] = scan(total * w / workers, total * (w + 1) / workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Best best;
  for (const Best& b : partial) {
    if (b.index >= 0 && (best.index < 0 || b.cost < best.cost)) best = b;
  }
  return {LocalStrategy::Pure(coarse, n, na, decode(best.index)), best.cost,
          total};
}

}  // namespace mfg
