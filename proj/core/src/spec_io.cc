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

#include "mfg/spec_io.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "mfg/errors.h"

namespace mfg {
namespace {

int Line(const YAML::Node& node) { return node.Mark().line + 1; }

[[noreturn]] void Fail(const YAML::Node& node, const std::string& message) {
  throw ParseError(message, Line(node));
}

void CheckKeys(const YAML::Node& map, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!map.IsMap()) Fail(map, where + " must be a mapping");
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      Fail(kv.first, "unknown key '" + key + "' in " + where);
    }
  }
}

// The key node of `key` in `map`, for error positions.
YAML::Node KeyNode(const YAML::Node& map, const std::string& key) {
  for (const auto& kv : map) {
    if (kv.first.as<std::string>() == key) return kv.first;
  }
  return map;
}

template <typename T>
T As(const YAML::Node& node, const std::string& what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Fail(node, "bad value for " + what);
  }
}

double Number(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) Fail(node, what + " must be a number");
  const double v = As<double>(node, what);
  if (!std::isfinite(v)) Fail(node, what + " must be finite");
  return v;
}

std::vector<std::string> Labels(const YAML::Node& node,
                                const std::string& what) {
  if (!node.IsSequence() || node.size() == 0) {
    Fail(node, what + " must be a nonempty list of labels");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& item : node) {
    std::string label = As<std::string>(item, what);
    if (label == "*" || !seen.insert(label).second) {
      Fail(item, "invalid or duplicate label '" + label + "' in " + what);
    }
    out.push_back(std::move(label));
  }
  return out;
}

// Resolves a label or 1-based index; -1 for "*" when allowed.
int Resolve(const YAML::Node& node, const std::vector<std::string>& labels,
            int count, const std::string& what, bool wildcard) {
  if (!node.IsScalar()) Fail(node, what + " must be a label or index");
  const std::string token = node.Scalar();
  if (token == "*") {
    if (!wildcard) Fail(node, "wildcard not allowed for " + what);
    return -1;
  }
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == token) return i;
  }
  int index = 0;
  try {
    std::size_t used = 0;
    index = std::stoi(token, &used);
    if (used != token.size()) index = 0;
  } catch (const std::exception&) {
    index = 0;
  }
  if (index < 1 || index > count) {
    Fail(node, "unknown " + what + " '" + token + "' (labels or 1.." +
                   std::to_string(count) + ")");
  }
  return index - 1;
}

struct Context {
  int n_states = 0;
  int n_actions = 0;
  std::vector<std::string> states;
  std::vector<std::string> actions;

  int State(const YAML::Node& node, bool wildcard = false) const {
    return Resolve(node, states, n_states, "state", wildcard);
  }
  int Action(const YAML::Node& node, bool wildcard = true) const {
    return Resolve(node, actions, n_actions, "action", wildcard);
  }
};

// {state: coef, ...} -> dense slope of length E.
std::vector<double> Slope(const YAML::Node& node, const Context& ctx) {
  std::vector<double> slope(ctx.n_states, 0.0);
  if (!node.IsMap()) Fail(node, "slope must map states to coefficients");
  for (const auto& kv : node) {
    const int k = ctx.State(kv.first);
    slope[k] += Number(kv.second, "slope coefficient");
  }
  return slope;
}

std::vector<int> Expand(int index, int count) {
  if (index >= 0) return {index};
  std::vector<int> all(count);
  for (int i = 0; i < count; ++i) all[i] = i;
  return all;
}

SimplexField ParseTransitions(const YAML::Node& node, const Context& ctx,
                              bool kernel) {
  const std::string where = kernel ? "kernel" : "rates";
  CheckKeys(node, {"fill_diagonal", "terms"}, where);
  const bool fill = node["fill_diagonal"]
                        ? As<bool>(node["fill_diagonal"], "fill_diagonal")
                        : false;
  const int n = ctx.n_states;
  const int na = ctx.n_actions;
  auto tindex = [&](int i, int j, int a) {
    return (static_cast<std::size_t>(i) * n + j) * na + a;
  };
  std::vector<double> base(static_cast<std::size_t>(n) * n * na, 0.0);
  std::vector<double> slope(base.size() * n, 0.0);
  if (node["terms"]) {
    const YAML::Node terms = node["terms"];
    if (!terms.IsSequence()) Fail(terms, where + ".terms must be a list");
    for (const auto& term : terms) {
      CheckKeys(term, {"from", "to", "action", "const", "slope"},
                where + " term");
      if (!term["from"] || !term["to"]) {
        Fail(term, where + " term needs 'from' and 'to'");
      }
      const int from = ctx.State(term["from"], true);
      const int to = ctx.State(term["to"]);
      const int action =
          term["action"] ? ctx.Action(term["action"]) : -1;
      const double c = term["const"] ? Number(term["const"], "const") : 0.0;
      const std::vector<double> s =
          term["slope"] ? Slope(term["slope"], ctx)
                        : std::vector<double>(n, 0.0);
      for (int i : Expand(from, n)) {
        if (fill && i == to) {
          Fail(term, "diagonal entry given while fill_diagonal is set");
        }
        for (int a : Expand(action, na)) {
          base[tindex(i, to, a)] += c;
          for (int k = 0; k < n; ++k) slope[tindex(i, to, a) * n + k] += s[k];
        }
      }
    }
  }
  if (fill) {
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < na; ++a) {
        double b = kernel ? 1.0 : 0.0;
        std::vector<double> sl(n, 0.0);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          b -= base[tindex(i, j, a)];
          for (int k = 0; k < n; ++k) sl[k] -= slope[tindex(i, j, a) * n + k];
        }
        base[tindex(i, i, a)] = b;
        for (int k = 0; k < n; ++k) slope[tindex(i, i, a) * n + k] = sl[k];
      }
    }
  }
  return SimplexField::Affine(n, std::move(base), std::move(slope));
}

SimplexField ParseCosts(const YAML::Node& node, const Context& ctx) {
  if (!node.IsSequence()) Fail(node, "costs must be a list");
  const int n = ctx.n_states;
  const int na = ctx.n_actions;
  std::vector<double> base(static_cast<std::size_t>(n) * na, 0.0);
  std::vector<double> slope(base.size() * n, 0.0);
  for (const auto& term : node) {
    CheckKeys(term, {"state", "action", "const", "slope"}, "cost term");
    const int state = term["state"] ? ctx.State(term["state"], true) : -1;
    const int action = term["action"] ? ctx.Action(term["action"]) : -1;
    const double c = term["const"] ? Number(term["const"], "const") : 0.0;
    const std::vector<double> s = term["slope"] ? Slope(term["slope"], ctx)
                                                : std::vector<double>(n, 0.0);
    for (int i : Expand(state, n)) {
      for (int a : Expand(action, na)) {
        const std::size_t d = static_cast<std::size_t>(i) * na + a;
        base[d] += c;
        for (int k = 0; k < n; ++k) slope[d * n + k] += s[k];
      }
    }
  }
  return SimplexField::Affine(n, std::move(base), std::move(slope));
}

}  // namespace

GameSpec ParseSpec(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1);
  }
  if (!root.IsMap()) throw ParseError("spec must be a YAML mapping", 1);
  CheckKeys(root,
            {"format_version", "name", "time_mode", "horizon", "states",
             "actions", "n_states", "n_actions", "m0",
             "normalize_discrete_cost", "rates", "kernel", "costs"},
            "spec");
  if (!root["format_version"]) {
    throw ParseError("missing format_version", 1);
  }
  const int version = As<int>(root["format_version"], "format_version");
  if (version != kSpecFormatVersion) {
    Fail(root["format_version"],
         "unsupported format_version " + std::to_string(version));
  }

  GameSpec spec;
  Context ctx;
  if (root["name"]) spec.name = As<std::string>(root["name"], "name");
  if (!root["time_mode"]) throw ParseError("missing time_mode", 1);
  const std::string mode = As<std::string>(root["time_mode"], "time_mode");
  if (mode == "continuous") {
    spec.time_mode = TimeMode::kContinuous;
  } else if (mode == "discrete") {
    spec.time_mode = TimeMode::kDiscrete;
  } else {
    Fail(root["time_mode"], "time_mode must be continuous or discrete");
  }

  auto dimension = [&](const char* labels_key, const char* count_key,
                       std::vector<std::string>& labels, int& count) {
    if (root[labels_key] && root[count_key]) {
      Fail(KeyNode(root, count_key), std::string("give either ") + labels_key +
                                " or " + count_key + ", not both");
    }
    if (root[labels_key]) {
      labels = Labels(root[labels_key], labels_key);
      count = static_cast<int>(labels.size());
    } else if (root[count_key]) {
      count = As<int>(root[count_key], count_key);
      if (count < 1) Fail(root[count_key], std::string(count_key) + " must be >= 1");
    } else {
      throw ParseError(std::string("missing ") + labels_key + " or " +
                           count_key,
                       1);
    }
  };
  dimension("states", "n_states", ctx.states, ctx.n_states);
  dimension("actions", "n_actions", ctx.actions, ctx.n_actions);
  spec.n_states = ctx.n_states;
  spec.n_actions = ctx.n_actions;
  spec.state_labels = ctx.states;
  spec.action_labels = ctx.actions;

  if (!root["horizon"]) throw ParseError("missing horizon", 1);
  const YAML::Node horizon = root["horizon"];
  CheckKeys(horizon, {"discounted", "finite"}, "horizon");
  if (horizon.size() != 1) Fail(horizon, "horizon needs exactly one kind");
  if (horizon["discounted"]) {
    spec.horizon = Horizon::Discounted(Number(horizon["discounted"], "discount"));
  } else {
    spec.horizon = Horizon::Finite(Number(horizon["finite"], "horizon T"));
  }

  if (!root["m0"]) throw ParseError("missing m0", 1);
  const YAML::Node m0 = root["m0"];
  if (!m0.IsSequence() || static_cast<int>(m0.size()) != ctx.n_states) {
    Fail(m0, "m0 must list " + std::to_string(ctx.n_states) + " numbers");
  }
  for (const auto& v : m0) spec.m0.push_back(Number(v, "m0 entry"));

  if (root["normalize_discrete_cost"]) {
    spec.normalize_discrete_cost =
        As<bool>(root["normalize_discrete_cost"], "normalize_discrete_cost");
  }

  const bool continuous = spec.continuous();
  const char* want = continuous ? "rates" : "kernel";
  const char* other = continuous ? "kernel" : "rates";
  if (root[other]) {
    Fail(KeyNode(root, other),
         std::string(other) + " given for a " + mode + " game");
  }
  if (!root[want]) throw ParseError(std::string("missing ") + want, 1);
  spec.transitions = ParseTransitions(root[want], ctx, !continuous);
  if (!root["costs"]) throw ParseError("missing costs", 1);
  spec.costs = ParseCosts(root["costs"], ctx);
  return spec;
}

GameSpec LoadSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSpec(buffer.str());
}

std::string WriteSpec(const GameSpec& spec) {
  if (!spec.transitions.is_affine() || !spec.costs.is_affine()) {
    throw ValidationError("only affine specs can be written to a file");
  }
  const int n = spec.n_states;
  const int na = spec.n_actions;
  auto label = [](const std::vector<std::string>& labels, int i) {
    return i < static_cast<int>(labels.size()) ? labels[i]
                                               : std::to_string(i + 1);
  };
  auto coef = [&](const SimplexField& f, std::size_t d, int k) {
    return f.slope().empty() ? 0.0 : f.slope()[d * n + k];
  };

  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "format_version" << YAML::Value << kSpecFormatVersion;
  if (!spec.name.empty()) out << YAML::Key << "name" << YAML::Value << spec.name;
  out << YAML::Key << "time_mode" << YAML::Value
      << (spec.continuous() ? "continuous" : "discrete");
  out << YAML::Key << "horizon" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << (spec.horizon.discounted() ? "discounted" : "finite")
      << YAML::Value << spec.horizon.value << YAML::EndMap;
  if (spec.state_labels.empty()) {
    out << YAML::Key << "n_states" << YAML::Value << n;
  } else {
    out << YAML::Key << "states" << YAML::Value << YAML::Flow
        << spec.state_labels;
  }
  if (spec.action_labels.empty()) {
    out << YAML::Key << "n_actions" << YAML::Value << na;
  } else {
    out << YAML::Key << "actions" << YAML::Value << YAML::Flow
        << spec.action_labels;
  }
  out << YAML::Key << "m0" << YAML::Value << YAML::Flow << spec.m0;
  out << YAML::Key << "normalize_discrete_cost" << YAML::Value
      << spec.normalize_discrete_cost;

  auto slope_map = [&](const SimplexField& f, std::size_t d) {
    out << YAML::Key << "slope" << YAML::Value << YAML::Flow << YAML::BeginMap;
    for (int k = 0; k < n; ++k) {
      const double s = coef(f, d, k);
      if (s != 0.0) out << YAML::Key << label(spec.state_labels, k) << YAML::Value << s;
    }
    out << YAML::EndMap;
  };
  auto has_slope = [&](const SimplexField& f, std::size_t d) {
    for (int k = 0; k < n; ++k) {
      if (coef(f, d, k) != 0.0) return true;
    }
    return false;
  };

  out << YAML::Key << (spec.continuous() ? "rates" : "kernel") << YAML::Value
      << YAML::BeginMap << YAML::Key << "fill_diagonal" << YAML::Value << false
      << YAML::Key << "terms" << YAML::Value << YAML::BeginSeq;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < na; ++a) {
        const std::size_t d = spec.TransitionIndex(i, j, a);
        const double b = spec.transitions.base()[d];
        if (b == 0.0 && !has_slope(spec.transitions, d)) continue;
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "from" << YAML::Value << label(spec.state_labels, i);
        out << YAML::Key << "to" << YAML::Value << label(spec.state_labels, j);
        out << YAML::Key << "action" << YAML::Value
            << label(spec.action_labels, a);
        if (b != 0.0) out << YAML::Key << "const" << YAML::Value << b;
        if (has_slope(spec.transitions, d)) slope_map(spec.transitions, d);
        out << YAML::EndMap;
      }
    }
  }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "costs" << YAML::Value << YAML::BeginSeq;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < na; ++a) {
      const std::size_t d = spec.CostIndex(i, a);
      const double b = spec.costs.base()[d];
      if (b == 0.0 && !has_slope(spec.costs, d)) continue;
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "state" << YAML::Value << label(spec.state_labels, i);
      out << YAML::Key << "action" << YAML::Value
          << label(spec.action_labels, a);
      if (b != 0.0) out << YAML::Key << "const" << YAML::Value << b;
      if (has_slope(spec.costs, d)) slope_map(spec.costs, d);
      out << YAML::EndMap;
    }
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace mfg
