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

#ifndef MFG_BEST_RESPONSE_H_
#define MFG_BEST_RESPONSE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mfg/game.h"
#include "mfg/population_path.h"
#include "mfg/strategy.h"
#include "mfg/time_grid.h"

namespace mfg {

// v[k][i]: optimal cost-to-go from state i at grid time k.
class ValuePath {
 public:
  ValuePath(TimeGrid grid, int n_states, std::vector<double> values);

  const TimeGrid& grid() const { return grid_; }
  int n_states() const { return n_states_; }
  std::span<const double> At(int k) const {
    return {values_.data() + static_cast<std::size_t>(k) * n_states_,
            static_cast<std::size_t>(n_states_)};
  }
  const std::vector<double>& values() const { return values_; }

 private:
  TimeGrid grid_;
  int n_states_;
  std::vector<double> values_;
};

struct BestResponseResult {
  LocalStrategy strategy;
  ValuePath values;
};

// Pure best response to the population path by backward induction on
// mpath's grid, terminal value 0.
//
// Discrete time:
//   v_i(t) = min_a [ w c_ia(m_t) + gamma sum_j P_ija(m_t) v_j(t+1) ]
// with w = 1 - delta for normalized discounted costs (else 1) and
// gamma = delta (1 for a finite horizon).
//
// Continuous time, explicit scheme with trapezoidal stage cost:
//   v_i(t_k) = min_a [ h (c_ia(m_k) + c_ia(m_{k+1})) / 2
//                      + (1 - beta h) (v_i(t_{k+1})
//                                      + h sum_j Q_ija(m_k) v_j(t_{k+1})) ]
// with beta = 0 for a finite horizon. Throws GridError when beta h >= 1 or
// h times the largest exit rate exceeds 1.
//
// Ties (within 1e-12 relative) go to the lowest action index.
BestResponseResult BestResponse(const GameSpec& spec,
                                const PopulationPath& mpath);

struct OracleResult {
  LocalStrategy strategy;
  double cost = 0.0;
  std::int64_t candidates = 0;
};

// Largest number of candidates BestResponseOracle accepts.
inline constexpr std::int64_t kOracleLimit = 1'000'000;

// Exhaustive search over the pure strategies that are constant on the
// intervals of `coarse`, each scored by EvaluateCost from spec.m0 against
// `mpath` (whose grid must refine `coarse`). Candidates are ordered
// lexicographically by (interval, state) with interval 0 most significant;
// the first minimizer wins. The search is split across `threads` workers with
// an order-preserving reduction, so the result does not depend on `threads`.
// Throws ValidationError when A^(E K) exceeds kOracleLimit.
OracleResult BestResponseOracle(const GameSpec& spec,
                                const PopulationPath& mpath,
                                const TimeGrid& coarse, int threads = 1);

}  // namespace mfg

#endif  // MFG_BEST_RESPONSE_H_
