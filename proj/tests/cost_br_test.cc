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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mfg/best_response.h"
#include "mfg/cost.h"
#include "mfg/dynamics.h"
#include "mfg/errors.h"
#include "mfg/exploitability.h"
#include "mfg/occupation.h"
#include "mfg/scenarios.h"
#include "test_util.h"

namespace mfg {
namespace {

using testing::Gen;

constexpr double kDelta = 0.9;

PopulationPath PrisonerDefectPath(const TimeGrid& grid) {
  return testing::PathFromFunction(grid, 2, [](double t) {
    return std::vector<double>{std::exp(-t), 1 - std::exp(-t)};
  });
}

PopulationPath ConstantPath(const TimeGrid& grid, const std::vector<double>& m) {
  return testing::PathFromFunction(grid, static_cast<int>(m.size()),
                                   [&](double) { return m; });
}

double FolkCost(const std::string& player, const std::string& population,
                int k) {
  const GameSpec spec = ScenarioSpec("folk-repeated");
  const TimeGrid grid = DefaultGrid(spec);
  const Strategy pop = ResolveScenarioStrategy("folk-repeated", spec,
                                               population, grid);
  const PopulationPath m = IntegratePopulation(spec, pop, grid);
  const Strategy pi0 =
      ResolveScenarioStrategy("folk-repeated", spec, player, grid);
  return EvaluateCost(spec, pi0, m, spec.m0).value;
}

TEST(EvaluateCostTest, FolkGrimValues) {
  for (int k = 1; k <= 3; ++k) {
    const std::string grim = "grim:" + std::to_string(k);
    EXPECT_NEAR(FolkCost(grim, grim, k), -1 - std::pow(kDelta, k), 1e-9);
    EXPECT_NEAR(FolkCost("always-D", grim, k), -1 - 2 * std::pow(kDelta, k),
                1e-9);
  }
  EXPECT_NEAR(FolkCost("always-D", "always-D", 1), -1.0, 1e-9);
}

TEST(EvaluateCostTest, ZeroCostIsZero) {
  Gen gen(3);
  for (const TimeMode mode : {TimeMode::kContinuous, TimeMode::kDiscrete}) {
    const GameSpec spec = testing::ZeroCostGame(mode);
    const TimeGrid grid = DefaultGrid(spec);
    const PopulationPath m = IntegratePopulation(
        spec, LocalStrategy::Uniform(grid, 2, 2), grid);
    const CostResult r = EvaluateCost(
        spec, testing::RandomLocalStrategy(gen, grid, 2, 2), m, gen.Simplex(2));
    EXPECT_EQ(r.value, 0.0);
  }
}

TEST(EvaluateCostTest, PrisonerValues) {
  // Closed forms: int (2 - e^{-t}) e^{-beta t} dt = 2/beta - 1/(beta + 1)
  // and int e^{-beta t} dt = 1/beta.
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const double beta = spec.horizon.value;
  const TimeGrid grid(40.0, 40000);
  const Strategy d = LocalStrategy::Always(grid, 2, 2, 1);
  const Strategy c = LocalStrategy::Always(grid, 2, 2, 0);
  const CostResult dev =
      EvaluateCost(spec, d, PrisonerDefectPath(grid), std::vector<double>{1, 0});
  EXPECT_NEAR(dev.value, 2 / beta - 1 / (beta + 1), 1e-6);
  const PopulationPath all_c = IntegratePopulation(spec, c, grid);
  const CostResult coop = EvaluateCost(spec, c, all_c, spec.m0);
  EXPECT_NEAR(coop.value, 1 / beta, 1e-6);
  EXPECT_NEAR(coop.tail_bound, std::exp(-beta * 40) * 3 / beta, 1e-15);
}

TEST(EvaluateCostTest, TailToleranceEnforced) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid(5.0, 500);
  const Strategy d = LocalStrategy::Always(grid, 2, 2, 1);
  const PopulationPath m = PrisonerDefectPath(grid);
  EXPECT_THROW(EvaluateCost(spec, d, m, spec.m0, 1e-3), NumericalError);
  EXPECT_NO_THROW(EvaluateCost(spec, d, m, spec.m0, 1.0));
}

TEST(EvaluateCostTest, FiniteHorizonGridMustEndAtT) {
  const GameSpec spec =
      ScenarioSpec("prisoner-mfg", ScenarioOptions{.horizon = 2.0});
  const TimeGrid grid(3.0, 300);
  const Strategy d = LocalStrategy::Always(grid, 2, 2, 1);
  EXPECT_THROW(EvaluateCost(spec, d, PrisonerDefectPath(grid), spec.m0),
               GridError);
  const TimeGrid ok(2.0, 2000);
  const CostResult r =
      EvaluateCost(spec, LocalStrategy::Always(ok, 2, 2, 0),
                   ConstantPath(ok, {1.0, 0.0}), std::vector<double>{1, 0});
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_EQ(r.tail_bound, 0.0);
}

TEST(EvaluateCostTest, DiscreteMatchesDirectSum) {
  Gen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    GameSpec spec = testing::RandomGame(gen, 3, 2, TimeMode::kDiscrete,
                                        Horizon::Discounted(0.7));
    spec.normalize_discrete_cost = trial % 2 == 0;
    const TimeGrid grid = DefaultGrid(spec);
    const LocalStrategy pi = testing::RandomLocalStrategy(gen, grid, 3, 2);
    const PopulationPath m = IntegratePopulation(spec, pi, grid);
    const std::vector<double> x0 = gen.Simplex(3);
    const PopulationPath x = IntegrateTagged(spec, pi, m, x0);
    double sum = 0.0;
    for (int k = 0; k < grid.steps(); ++k) {
      const std::vector<double> c = spec.costs.Evaluate(m.At(k));
      double stage = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 2; ++a)
          stage += x.At(k)[i] * c[spec.CostIndex(i, a)] * pi.At(k, i)[a];
      sum += std::pow(0.7, k) * stage;
    }
    if (spec.normalize_discrete_cost) sum *= 0.3;
    EXPECT_NEAR(EvaluateCost(spec, pi, m, x0).value, sum, 1e-12);
  }
}

TEST(BestResponseTest, PrisonerAlwaysDefects) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid = DefaultGrid(spec);
  for (const std::string name : {"always-C", "always-D", "switch-at:1"}) {
    const PopulationPath m = IntegratePopulation(
        spec, ResolveScenarioStrategy("prisoner-mfg", spec, name, grid), grid);
    const BestResponseResult br = BestResponse(spec, m);
    // The last interval has no continuation and the state-based cost makes
    // both actions equal there.
    for (int k = 0; k + 1 < grid.steps(); ++k) {
      for (int i = 0; i < 2; ++i) {
        EXPECT_EQ(br.strategy.PureAction(k, i), std::optional<int>(1))
            << name << " k=" << k;
      }
    }
  }
}

TEST(BestResponseTest, ZeroCostTiesGoToFirstAction) {
  for (const TimeMode mode : {TimeMode::kContinuous, TimeMode::kDiscrete}) {
    const GameSpec spec = testing::ZeroCostGame(mode);
    const TimeGrid grid = DefaultGrid(spec);
    const PopulationPath m = IntegratePopulation(
        spec, LocalStrategy::Uniform(grid, 2, 2), grid);
    const BestResponseResult br = BestResponse(spec, m);
    for (int k = 0; k < grid.steps(); ++k) {
      for (int i = 0; i < 2; ++i) {
        EXPECT_EQ(br.strategy.PureAction(k, i), std::optional<int>(0));
      }
    }
    for (double v : br.values.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(BestResponseTest, RejectsCoarseGrids) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  // h * exit rate > 1.
  const TimeGrid coarse(20.0, 10);
  EXPECT_THROW(BestResponse(spec, PrisonerDefectPath(coarse)), GridError);
  // beta * h >= 1.
  const GameSpec impatient =
      ScenarioSpec("prisoner-mfg", ScenarioOptions{.discount = 10.0});
  EXPECT_THROW(BestResponse(impatient, PrisonerDefectPath(TimeGrid(4.0, 40))),
               GridError);
}

TEST(BestResponseTest, RejectsOffSimplexPath) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid(2.0, 200);
  EXPECT_THROW(BestResponse(spec, ConstantPath(grid, {0.6, 0.6})),
               ValidationError);
}

TEST(BestResponseTest, MatchesOracleOnDiscreteInstances) {
  Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GameSpec spec = testing::RandomGame(gen, 2, 2, TimeMode::kDiscrete,
                                              Horizon::Finite(3));
    const TimeGrid grid = DefaultGrid(spec);
    const PopulationPath m = IntegratePopulation(
        spec, testing::RandomLocalStrategy(gen, grid, 2, 2), grid);
    const BestResponseResult br = BestResponse(spec, m);
    const OracleResult oracle = BestResponseOracle(spec, m, grid);
    EXPECT_EQ(oracle.candidates, 256);
    EXPECT_EQ(EvaluateCost(spec, br.strategy, m, spec.m0).value, oracle.cost);
    double v0 = 0.0;
    for (int i = 0; i < 2; ++i) v0 += spec.m0[i] * br.values.At(0)[i];
    EXPECT_NEAR(v0, oracle.cost, 1e-12);
  }
}

TEST(BestResponseTest, MatchesOracleOnContinuousInstances) {
  // A frozen population makes the control problem time-homogeneous, so the
  // optimal discounted control is stationary and lies in the coarse class.
  Gen gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const GameSpec spec = testing::RandomGame(
        gen, 2, 2, TimeMode::kContinuous, Horizon::Discounted(1.0), 2.0);
    const TimeGrid grid(24.0, 2400);
    const PopulationPath m = ConstantPath(grid, gen.Simplex(2));
    const BestResponseResult br = BestResponse(spec, m);
    const TimeGrid coarse(grid.t_end(), 3);
    const OracleResult oracle = BestResponseOracle(spec, m, coarse);
    EXPECT_EQ(oracle.candidates, 64);
    const double v_br = EvaluateCost(spec, br.strategy, m, spec.m0).value;
    EXPECT_NEAR(v_br, oracle.cost, 10 * grid.step());
    EXPECT_LE(v_br, oracle.cost + 10 * grid.step());
  }
}

TEST(BestResponseOracleTest, PrisonerPicksDefection) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid(40.0, 4000);
  const PopulationPath m = IntegratePopulation(
      spec, LocalStrategy::Always(grid, 2, 2, 1), grid);
  const OracleResult r = BestResponseOracle(spec, m, TimeGrid(grid.t_end(), 2));
  EXPECT_EQ(r.candidates, 16);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_EQ(r.strategy.PureAction(k, i), std::optional<int>(1));
    }
  }
}

TEST(BestResponseOracleTest, ZeroCostReturnsFirstCandidate) {
  const GameSpec spec = testing::ZeroCostGame();
  const TimeGrid grid(6.0, 600);
  const PopulationPath m = IntegratePopulation(
      spec, LocalStrategy::Uniform(grid, 2, 2), grid);
  const OracleResult r = BestResponseOracle(spec, m, TimeGrid(grid.t_end(), 3));
  EXPECT_EQ(r.candidates, 64);
  EXPECT_EQ(r.cost, 0.0);
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_EQ(r.strategy.PureAction(k, i), std::optional<int>(0));
    }
  }
}

TEST(BestResponseOracleTest, ThreadCountDoesNotChangeResult) {
  Gen gen(17);
  const GameSpec spec = testing::RandomGame(gen, 2, 2, TimeMode::kDiscrete,
                                            Horizon::Discounted(0.8));
  const TimeGrid grid = TimeGrid::Discrete(4);
  const PopulationPath m = IntegratePopulation(
      spec, LocalStrategy::Uniform(grid, 2, 2), grid);
  const OracleResult one = BestResponseOracle(spec, m, grid, 1);
  const OracleResult four = BestResponseOracle(spec, m, grid, 4);
  EXPECT_EQ(one.cost, four.cost);
  EXPECT_EQ(one.strategy.probs(), four.strategy.probs());
}

TEST(BestResponseOracleTest, EnumerationGuard) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid(10.0, 1000);
  const PopulationPath m = PrisonerDefectPath(grid);
  // 2^(2 * 10) > 10^6.
  EXPECT_THROW(BestResponseOracle(spec, m, TimeGrid(10.0, 10)),
               ValidationError);
  EXPECT_THROW(BestResponseOracle(spec, m, TimeGrid(10.0, 7)), GridError);
}

TEST(ValuePathTest, RespectsBound) {
  Gen gen(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.Int(2, 4);
    const int na = gen.Int(1, 3);
    const int kind = trial % 3;
    GameSpec spec;
    if (kind == 0) {
      spec = testing::RandomGame(gen, n, na, TimeMode::kContinuous,
                                 Horizon::Discounted(gen.Uniform(0.2, 2.0)));
    } else if (kind == 1) {
      spec = testing::RandomGame(gen, n, na, TimeMode::kContinuous,
                                 Horizon::Finite(3.0));
    } else {
      spec = testing::RandomGame(gen, n, na, TimeMode::kDiscrete,
                                 Horizon::Discounted(0.9));
    }
    const TimeGrid grid = DefaultGrid(spec);
    const PopulationPath m = IntegratePopulation(
        spec, LocalStrategy::Uniform(grid, n, na), grid);
    const ValuePath v = BestResponse(spec, m).values;
    const double c_max = MaxAbsCost(spec);
    for (int k = 0; k <= grid.steps(); ++k) {
      double bound;
      if (kind == 0) {
        bound = c_max / spec.horizon.value;
      } else if (kind == 1) {
        bound = c_max * (3.0 - grid.time(k));
      } else {
        bound = DiscreteCostWeight(spec) * c_max / (1 - spec.horizon.value);
      }
      for (double x : v.At(k)) EXPECT_LE(std::abs(x), bound + 1e-12);
    }
  }
}

TEST(ValuePathTest, TruncationMonotone) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const double beta = spec.horizon.value;
  const double h = 1e-2;
  for (const double t_end : {5.0, 10.0, 20.0}) {
    const int steps = static_cast<int>(std::lround(t_end / h));
    const TimeGrid a(t_end, steps), b(t_end + h, steps + 1);
    const double va = BestResponse(spec, PrisonerDefectPath(a)).values.At(0)[0];
    const double vb = BestResponse(spec, PrisonerDefectPath(b)).values.At(0)[0];
    EXPECT_LT(std::abs(vb - va), std::exp(-beta * t_end) * 3 / beta);
  }
}

TEST(OccupationTest, CatalogBestResponsesAreConsistent) {
  for (const std::string& name : ScenarioNames()) {
    const GameSpec spec = ScenarioSpec(name);
    const TimeGrid grid = DefaultGrid(spec);
    const PopulationPath m = IntegratePopulation(
        spec, LocalStrategy::Uniform(grid, spec.n_states, spec.n_actions),
        grid);
    const LocalStrategy br = BestResponse(spec, m).strategy;
    const OccupationReport r = OccupationCheck(spec, br, m, spec.m0);
    EXPECT_TRUE(r.ok()) << name << ": " << ::testing::PrintToString(r.violations);
    EXPECT_LE(r.max_marginal_error, 1e-9) << name;
    EXPECT_GE(r.min_z, -1e-9) << name;
    EXPECT_LT(r.max_dynamics_residual, 10 * grid.step()) << name;
    EXPECT_NEAR(r.objective, EvaluateCost(spec, br, m, spec.m0).value, 1e-9)
        << name;
  }
}

TEST(OccupationTest, RandomStrategiesMarginalsExact) {
  Gen gen(37);
  for (int trial = 0; trial < 10; ++trial) {
    const GameSpec spec = testing::RandomGame(
        gen, 3, 2, TimeMode::kContinuous, Horizon::Discounted(1.0), 2.0);
    const TimeGrid grid(6.0, 600);
    const LocalStrategy pi = testing::RandomLocalStrategy(gen, grid, 3, 2);
    const PopulationPath m = IntegratePopulation(spec, pi, grid);
    const OccupationPath occ =
        BuildOccupation(spec, pi, m, gen.Simplex(3));
    for (int k = 0; k < grid.steps(); ++k) {
      for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(occ.z_start[occ.Index(k, i, 0)] +
                        occ.z_start[occ.Index(k, i, 1)],
                    occ.x.At(k)[i], 1e-15);
      }
    }
    const OccupationReport r = CheckOccupation(spec, occ, m, 0.0);
    EXPECT_LE(r.max_marginal_error, 1e-15);
    EXPECT_LT(r.max_dynamics_residual, 10 * grid.step());
  }
}

TEST(OccupationTest, FlagsInjectedFault) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid = DefaultGrid(spec);
  const PopulationPath m = IntegratePopulation(
      spec, LocalStrategy::Always(grid, 2, 2, 1), grid);
  const LocalStrategy br = BestResponse(spec, m).strategy;
  OccupationPath occ = BuildOccupation(spec, br, m, spec.m0);
  const double reference = EvaluateCost(spec, br, m, spec.m0).value;
  EXPECT_TRUE(CheckOccupation(spec, occ, m, reference).ok());
  occ.z_start[occ.Index(100, 0, 1)] += 1e-3;
  const OccupationReport r = CheckOccupation(spec, occ, m, reference);
  EXPECT_FALSE(r.ok());
  EXPECT_NEAR(r.max_marginal_error, 1e-3, 1e-12);
}

TEST(OccupationTest, DiscreteScenario) {
  const GameSpec spec = ScenarioSpec("folk-repeated");
  const TimeGrid grid = DefaultGrid(spec);
  const Strategy grim = ResolveScenarioStrategy("folk-repeated", spec,
                                                "grim:3", grid);
  const PopulationPath m = IntegratePopulation(spec, grim, grid);
  const OccupationReport r = OccupationCheck(spec, grim, m, spec.m0);
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.objective, -1 - std::pow(kDelta, 3), 1e-9);
}

TEST(ExploitabilityTest, PrisonerStrategies) {
  const GameSpec spec = ScenarioSpec("prisoner-mfg");
  const TimeGrid grid = DefaultGrid(spec);
  EXPECT_LT(Exploitability(spec, LocalStrategy::Always(grid, 2, 2, 1), grid),
            1e-6);
  const ExploitabilityResult c =
      ComputeExploitability(spec, LocalStrategy::Always(grid, 2, 2, 0), grid);
  EXPECT_GT(c.value, 0.1);
  EXPECT_NEAR(c.value, c.v_pi - c.v_br, 1e-15);
}

TEST(ExploitabilityTest, ZeroCostGame) {
  Gen gen(41);
  for (const TimeMode mode : {TimeMode::kContinuous, TimeMode::kDiscrete}) {
    const GameSpec spec = testing::ZeroCostGame(mode);
    const TimeGrid grid = DefaultGrid(spec);
    EXPECT_EQ(
        Exploitability(spec, testing::RandomLocalStrategy(gen, grid, 2, 2), grid),
        0.0);
  }
}

TEST(ExploitabilityTest, FolkGrimIsExploitable) {
  const GameSpec spec = ScenarioSpec("folk-repeated");
  const TimeGrid grid = DefaultGrid(spec);
  for (int k = 1; k <= 3; ++k) {
    const Strategy grim = ResolveScenarioStrategy(
        "folk-repeated", spec, "grim:" + std::to_string(k), grid);
    EXPECT_GE(Exploitability(spec, grim, grid), std::pow(kDelta, k) - 1e-6);
  }
}

TEST(ExploitabilityTest, NonnegativeOnRandomGames) {
  Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const bool discrete = trial % 2 == 1;
    const GameSpec spec = testing::RandomGame(
        gen, gen.Int(2, 3), 2,
        discrete ? TimeMode::kDiscrete : TimeMode::kContinuous,
        discrete ? Horizon::Discounted(0.8) : Horizon::Discounted(1.0));
    const TimeGrid grid = DefaultGrid(spec);
    const ExploitabilityResult r = ComputeExploitability(
        spec, testing::RandomLocalStrategy(gen, grid, spec.n_states, 2), grid);
    EXPECT_GE(r.value, 0.0);
    EXPECT_GE(r.raw_gap, -1e-6);
  }
}

}  // namespace
}  // namespace mfg
