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

#include "cli.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mfg/best_response.h"
#include "mfg/cost.h"
#include "mfg/csv_io.h"
#include "mfg/dynamics.h"
#include "mfg/errors.h"
#include "mfg/exploitability.h"
#include "mfg/mfe_solver.h"
#include "mfg/rng.h"
#include "mfg/scenarios.h"
#include "mfg/simulation.h"
#include "mfg/spec_io.h"
#include "mfg/validate.h"

namespace mfg::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr int kJsonFormatVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

struct GameFlags {
  std::string spec_file;
  std::string scenario;
  std::optional<double> discount;
  std::optional<double> horizon;
};

struct GridFlags {
  double step = 0.0;
  double t_end = 0.0;
  int steps = 0;

  bool any() const { return step > 0.0 || t_end > 0.0 || steps > 0; }
};

struct Game {
  GameSpec spec;
  std::string scenario;
};

void AddGameFlags(CLI::App* cmd, GameFlags& flags) {
  cmd->add_option("spec", flags.spec_file, "Game spec file (YAML)");
  cmd->add_option("--scenario", flags.scenario, "Built-in scenario name");
  cmd->add_option("--discount", flags.discount,
                  "Discount rate beta or factor delta (scenarios only)");
  cmd->add_option("--horizon", flags.horizon,
                  "Finite horizon T (scenarios only)");
}

void AddGridFlags(CLI::App* cmd, GridFlags& flags) {
  cmd->add_option("--step", flags.step, "Continuous grid step");
  cmd->add_option("--t-end", flags.t_end, "Grid end time");
  cmd->add_option("--grid-steps", flags.steps, "Number of grid intervals");
}

Game LoadGame(const GameFlags& flags) {
  if (flags.spec_file.empty() == flags.scenario.empty()) {
    throw ValidationError("give exactly one of a spec file or --scenario");
  }
  if (!flags.spec_file.empty()) {
    if (flags.discount || flags.horizon) {
      throw ValidationError("--discount/--horizon apply to scenarios only");
    }
    return {LoadSpec(flags.spec_file), ""};
  }
  ScenarioOptions options{flags.discount, flags.horizon};
  return {ScenarioSpec(flags.scenario, options), flags.scenario};
}

TimeGrid MakeGrid(const GameSpec& spec, const GridFlags& flags) {
  GridOptions options;
  if (flags.step > 0.0) options.step = flags.step;
  options.t_end = flags.t_end;
  options.steps = flags.steps;
  return DefaultGrid(spec, options);
}

bool IsFile(const std::string& arg) {
  std::error_code ec;
  return fs::is_regular_file(arg, ec);
}

Strategy LoadStrategyArg(const Game& game, const std::string& arg,
                         const TimeGrid& grid) {
  if (IsFile(arg)) {
    return LoadStrategyCsv(arg, game.spec.n_states, game.spec.n_actions);
  }
  if (!game.scenario.empty()) {
    return ResolveScenarioStrategy(game.scenario, game.spec, arg, grid);
  }
  return ResolveStrategy(game.spec, arg, grid);
}

// A strategy file fixes the grid unless the grid was given explicitly.
TimeGrid GridFor(const Game& game, const GridFlags& flags,
                 const std::vector<std::string>& strategy_args) {
  if (!flags.any()) {
    for (const auto& arg : strategy_args) {
      if (IsFile(arg)) {
        return LoadStrategyCsv(arg, game.spec.n_states, game.spec.n_actions)
            .grid();
      }
    }
  }
  return MakeGrid(game.spec, flags);
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MfgError("cannot write " + path.string());
  out << text;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

template <typename F>
void WriteWith(const fs::path& path, F write) {
  std::ostringstream os;
  write(os);
  WriteText(path, os.str());
}

void PrepareOut(const std::string& dir, const std::string& command) {
  fs::create_directories(dir);
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::ostringstream stamp;
  stamp << std::put_time(std::gmtime(&tt), "%Y-%m-%dT%H:%M:%SZ");
  json info;
  info["format_version"] = kJsonFormatVersion;
  info["command"] = command;
  info["tool_version"] = kToolVersion;
  info["timestamp"] = stamp.str();
  WriteText(fs::path(dir) / "run_info.json", Dump(info));
}

json GridJson(const TimeGrid& grid) {
  return {{"t_end", grid.t_end()}, {"steps", grid.steps()}};
}

json EstimateJson(const CostEstimate& est) {
  json j;
  j["mean"] = est.mean;
  if (est.std_error) j["stderr"] = *est.std_error;
  if (est.ci95) j["ci95"] = *est.ci95;
  j["R"] = est.replications;
  return j;
}

int CmdValidate(const GameFlags& flags, std::ostream& out) {
  const Game game = LoadGame(flags);
  const ValidationReport report = ValidateSpec(game.spec);
  if (report.ok()) {
    out << "ok: " << (game.spec.name.empty() ? "spec" : game.spec.name)
        << " is valid\n";
    return kExitOk;
  }
  out << report.ToString();
  return kExitInvalid;
}

struct SolveFlags {
  int max_iters = 200;
  std::string damping = "fictitious-play";
  double lambda = 1.0;
  double eps = 1e-6;
  double path_tol = 1e-6;
  std::string out_dir;
};

int CmdSolve(const GameFlags& game_flags, const GridFlags& grid_flags,
             const SolveFlags& flags, std::ostream& out) {
  const Game game = LoadGame(game_flags);
  SolverConfig config;
  config.max_iters = flags.max_iters;
  config.damping = ParseDamping(flags.damping);
  config.lambda = flags.lambda;
  config.eps_tol = flags.eps;
  config.path_tol = flags.path_tol;
  config.grid = MakeGrid(game.spec, grid_flags);
  const MfeResult result = SolveMfe(game.spec, config);

  json summary;
  summary["format_version"] = kJsonFormatVersion;
  summary["command"] = "solve";
  summary["game"] = game.spec.name;
  summary["converged"] = result.converged;
  summary["iterations"] = result.iterations;
  summary["exploitability"] = result.exploitability;
  summary["damping"] = DampingName(config.damping);
  if (config.damping == Damping::kFixed) summary["lambda"] = config.lambda;
  summary["eps_tol"] = config.eps_tol;
  summary["path_tol"] = config.path_tol;
  summary["grid"] = GridJson(*config.grid);
  summary["projection"] = {
      {"max_mass_drift", result.mpath.projection().max_mass_drift},
      {"max_negative_mass", result.mpath.projection().max_negative_mass}};
  json history = json::array();
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    history.push_back({{"iteration", i + 1},
                       {"path_change", result.history[i].path_change},
                       {"exploitability", result.history[i].exploitability}});
  }
  summary["history"] = std::move(history);

  if (!flags.out_dir.empty()) {
    PrepareOut(flags.out_dir, "solve");
    const fs::path dir(flags.out_dir);
    WriteWith(dir / "strategy.csv",
              [&](std::ostream& os) { WriteStrategyCsv(os, result.strategy); });
    WriteWith(dir / "mpath.csv",
              [&](std::ostream& os) { WritePathCsv(os, result.mpath); });
    const BestResponseResult br = BestResponse(game.spec, result.mpath);
    WriteWith(dir / "values.csv",
              [&](std::ostream& os) { WriteValueCsv(os, br.values); });
    WriteText(dir / "summary.json", Dump(summary));
  }
  out << "converged=" << (result.converged ? "true" : "false")
      << " iterations=" << result.iterations
      << " exploitability=" << FormatDouble(result.exploitability) << "\n";
  return kExitOk;
}

struct SimulateFlags {
  int n = 100;
  std::uint64_t seed = 0;
  int reps = 1;
  std::string strategy = "uniform";
  std::vector<std::string> deviations;
  std::string out_dir;
  int traces = 0;
  bool mf_check = false;
};

int CmdSimulate(const GameFlags& game_flags, const GridFlags& grid_flags,
                const SimulateFlags& flags, int threads, std::ostream& out) {
  const Game game = LoadGame(game_flags);
  std::vector<std::string> strategy_args = {flags.strategy};
  strategy_args.insert(strategy_args.end(), flags.deviations.begin(),
                       flags.deviations.end());
  const TimeGrid grid = GridFor(game, grid_flags, strategy_args);
  const Strategy pi = LoadStrategyArg(game, flags.strategy, grid);

  SimConfig config;
  config.n_players = flags.n;
  config.seed = flags.seed;
  config.replications = flags.reps;
  config.threads = threads;
  config.grid = grid;
  const StrategyProfile profile{pi, {}};

  json est;
  est["format_version"] = kJsonFormatVersion;
  est["command"] = "simulate";
  est["game"] = game.spec.name;
  est["time_mode"] = game.spec.continuous() ? "continuous" : "discrete";
  est["strategy"] = flags.strategy;
  const CostEstimate value =
      Summarize(ReplicateCosts(game.spec, config, profile));
  est["mean"] = value.mean;
  if (value.std_error) est["stderr"] = *value.std_error;
  if (value.ci95) est["ci95"] = *value.ci95;
  est["R"] = flags.reps;
  est["N"] = flags.n;
  est["seed"] = flags.seed;
  est["rng"] = kRngName;
  est["grid"] = GridJson(grid);
  est["tail_bound"] = TruncationTailBound(game.spec, grid);

  if (flags.mf_check) {
    const PopulationPath mpath = IntegratePopulation(game.spec, pi, grid);
    const std::vector<double> sup =
        ReplicateSupDeviation(game.spec, config, profile, mpath);
    const CostEstimate s = Summarize(sup);
    double worst = 0.0;
    for (double v : sup) worst = std::max(worst, v);
    json mf;
    mf["mean_sup_deviation"] = s.mean;
    if (s.ci95) mf["ci95"] = *s.ci95;
    mf["max_sup_deviation"] = worst;
    est["mean_field"] = std::move(mf);
  }

  if (!flags.deviations.empty()) {
    std::vector<NamedStrategy> devs;
    for (const auto& d : flags.deviations) {
      devs.push_back({d, LoadStrategyArg(game, d, grid)});
    }
    const DeviationReport report =
        DeviationTest(game.spec, config, pi, devs);
    json list = json::array();
    for (const auto& d : report.deviations) {
      list.push_back({{"deviation", d.name},
                      {"value", EstimateJson(d.value)},
                      {"gain", EstimateJson(d.gain)}});
    }
    est["deviations"] = std::move(list);
    est["max_gain"] = report.max_gain;
    est["max_gain_upper95"] = report.max_gain_upper;
    est["argmax"] = report.argmax;
  }

  if (!flags.out_dir.empty()) {
    PrepareOut(flags.out_dir, "simulate");
    const fs::path dir(flags.out_dir);
    const int traces = std::min(flags.traces, flags.reps);
    for (int r = 0; r < traces; ++r) {
      const SimTrace trace = Simulate(game.spec, config, profile, r);
      WriteWith(dir / ("trace_" + std::to_string(r) + ".csv"),
                [&](std::ostream& os) { WriteTraceCsv(os, trace); });
    }
    WriteText(dir / "estimate.json", Dump(est));
  }
  out << "mean=" << FormatDouble(value.mean);
  if (value.ci95) out << " ci95=" << FormatDouble(*value.ci95);
  out << " R=" << flags.reps << " N=" << flags.n << "\n";
  return kExitOk;
}

int CmdExploit(const GameFlags& game_flags, const GridFlags& grid_flags,
               const std::string& strategy_arg, const std::string& json_path,
               std::ostream& out) {
  const Game game = LoadGame(game_flags);
  const TimeGrid grid = GridFor(game, grid_flags, {strategy_arg});
  const Strategy pi = LoadStrategyArg(game, strategy_arg, grid);
  const ExploitabilityResult ex = ComputeExploitability(game.spec, pi, grid);
  out << FormatDouble(ex.value) << "\n";
  if (!json_path.empty()) {
    json j;
    j["format_version"] = kJsonFormatVersion;
    j["command"] = "exploit";
    j["game"] = game.spec.name;
    j["strategy"] = strategy_arg;
    j["exploitability"] = ex.value;
    j["raw_gap"] = ex.raw_gap;
    j["v_pi"] = ex.v_pi;
    j["v_best_response"] = ex.v_br;
    j["grid"] = GridJson(grid);
    WriteText(json_path, Dump(j));
  }
  return kExitOk;
}

int CmdScenario(const std::string& name, const std::string& out_path,
                std::ostream& out) {
  if (name == "list") {
    for (const auto& s : ScenarioNames()) {
      out << s;
      const auto strategies = ScenarioStrategyNames(s);
      for (std::size_t i = 0; i < strategies.size(); ++i) {
        out << (i == 0 ? "  strategies: " : ", ") << strategies[i];
      }
      out << "\n";
    }
    return kExitOk;
  }
  const std::string yaml = WriteSpec(ScenarioSpec(name));
  if (out_path.empty()) {
    out << yaml;
  } else {
    WriteText(out_path, yaml);
  }
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Mean field game solver and N-player simulator", "mfg"};
  app.require_subcommand(1);
  int threads = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--threads", threads, "Maximum worker threads")
      ->check(CLI::PositiveNumber);

  GameFlags game_flags;
  GridFlags grid_flags;

  auto* validate = app.add_subcommand("validate", "Check a game spec");
  AddGameFlags(validate, game_flags);

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Compute a mean field equilibrium");
  AddGameFlags(solve, game_flags);
  AddGridFlags(solve, grid_flags);
  solve->add_option("--max-iters", solve_flags.max_iters, "Iteration cap");
  solve->add_option("--damping", solve_flags.damping,
                    "fixed or fictitious-play");
  solve->add_option("--lambda", solve_flags.lambda, "Fixed damping weight");
  solve->add_option("--eps", solve_flags.eps, "Exploitability tolerance");
  solve->add_option("--path-tol", solve_flags.path_tol,
                    "Population path change tolerance");
  solve->add_option("--out", solve_flags.out_dir, "Output directory");

  SimulateFlags sim_flags;
  auto* simulate =
      app.add_subcommand("simulate", "Simulate the N-player game");
  AddGameFlags(simulate, game_flags);
  AddGridFlags(simulate, grid_flags);
  simulate->add_option("--n", sim_flags.n, "Number of players");
  simulate->add_option("--seed", sim_flags.seed, "Master seed");
  simulate->add_option("--reps", sim_flags.reps, "Replications");
  simulate->add_option("--strategy", sim_flags.strategy,
                       "Population strategy: CSV file or name");
  simulate->add_option("--deviation", sim_flags.deviations,
                       "Player-0 deviation (repeatable): CSV file or name");
  simulate->add_option("--traces", sim_flags.traces,
                       "Write trace CSVs for the first replications");
  simulate->add_flag("--mf-check", sim_flags.mf_check,
                     "Report sup_t |M(t) - m(t)| against the mean field flow");
  simulate->add_option("--out", sim_flags.out_dir, "Output directory");

  std::string exploit_strategy;
  std::string exploit_json;
  auto* exploit =
      app.add_subcommand("exploit", "Exploitability of a strategy");
  AddGameFlags(exploit, game_flags);
  AddGridFlags(exploit, grid_flags);
  exploit->add_option("--strategy", exploit_strategy, "CSV file or name")
      ->required();
  exploit->add_option("--json", exploit_json, "Write a JSON report");

  std::string scenario_name;
  std::string scenario_out;
  auto* scenario = app.add_subcommand(
      "scenario", "Print a built-in scenario as a spec file, or 'list'");
  scenario->add_option("name", scenario_name)->required();
  scenario->add_option("--out", scenario_out, "Write to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*validate) return CmdValidate(game_flags, out);
    if (*solve) return CmdSolve(game_flags, grid_flags, solve_flags, out);
    if (*simulate) {
      return CmdSimulate(game_flags, grid_flags, sim_flags, threads, out);
    }
    if (*exploit) {
      return CmdExploit(game_flags, grid_flags, exploit_strategy, exploit_json,
                        out);
    }
    if (*scenario) return CmdScenario(scenario_name, scenario_out, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitInvalid;
}

}  // namespace mfg::cli
