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

#include "mfg/csv_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "mfg/errors.h"

namespace mfg {

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

void Header(std::ostream& out, const std::string& kind,
            const std::string& extra = "") {
  out << "# format_version=" << kCsvFormatVersion << " kind=" << kind;
  if (!extra.empty()) out << " " << extra;
  out << "\n";
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseDouble(const std::string& s, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("bad number '" + s + "'", line);
  }
  return v;
}

int ParseInt(const std::string& s, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + s + "'", line);
  }
  return v;
}

}  // namespace

void WritePathCsv(std::ostream& out, const PopulationPath& path) {
  Header(out, "population_path");
  out << "t";
  for (int j = 0; j < path.n_states(); ++j) out << ",m_" << j + 1;
  out << "\n";
  for (int k = 0; k <= path.grid().steps(); ++k) {
    out << FormatDouble(path.grid().time(k));
    for (double v : path.At(k)) out << "," << FormatDouble(v);
    out << "\n";
  }
}

void WriteStrategyCsv(std::ostream& out, const LocalStrategy& strategy) {
  const TimeGrid& grid = strategy.grid();
  Header(out, "strategy",
         "t_end=" + FormatDouble(grid.t_end()) +
             " steps=" + std::to_string(grid.steps()));
  out << "t,state,action,prob\n";
  for (int k = 0; k < grid.steps(); ++k) {
    for (int i = 0; i < strategy.n_states(); ++i) {
      auto row = strategy.At(k, i);
      for (int a = 0; a < strategy.n_actions(); ++a) {
        out << FormatDouble(grid.time(k)) << "," << i + 1 << "," << a + 1
            << "," << FormatDouble(row[a]) << "\n";
      }
    }
  }
}

void WriteValueCsv(std::ostream& out, const ValuePath& values) {
  Header(out, "value_path");
  out << "t,state,value\n";
  for (int k = 0; k <= values.grid().steps(); ++k) {
    for (int i = 0; i < values.n_states(); ++i) {
      out << FormatDouble(values.grid().time(k)) << "," << i + 1 << ","
          << FormatDouble(values.At(k)[i]) << "\n";
    }
  }
}

void WriteTraceCsv(std::ostream& out, const SimTrace& trace) {
  Header(out, "trace", "n_players=" + std::to_string(trace.n_players));
  out << "t,event_player,new_state";
  for (int j = 0; j < trace.n_states; ++j) out << ",M_" << j + 1;
  out << "\n";
  for (int r = 0; r < trace.records(); ++r) {
    out << FormatDouble(trace.times[r]) << ",";
    if (trace.event_player[r] >= 0) out << trace.event_player[r];
    out << ",";
    if (trace.new_state[r] >= 0) out << trace.new_state[r] + 1;
    for (double v : trace.M(r)) out << "," << FormatDouble(v);
    out << "\n";
  }
}

LocalStrategy ReadStrategyCsv(std::istream& in, int n_states, int n_actions) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty strategy file", 1);
  ++line_no;
  if (line.rfind("#", 0) != 0) {
    throw ParseError("missing '# format_version=...' comment line", line_no);
  }
  std::map<std::string, std::string> meta;
  {
    std::istringstream is(line.substr(1));
    std::string token;
    while (is >> token) {
      const auto eq = token.find('=');
      if (eq != std::string::npos) {
        meta[token.substr(0, eq)] = token.substr(eq + 1);
      }
    }
  }
  if (!meta.count("format_version") ||
      ParseInt(meta["format_version"], line_no) != kCsvFormatVersion) {
    throw ParseError("unsupported or missing format_version", line_no);
  }
  if (!meta.count("t_end") || !meta.count("steps")) {
    throw ParseError("strategy comment line needs t_end and steps", line_no);
  }
  const double t_end = ParseDouble(meta["t_end"], line_no);
  const int steps = ParseInt(meta["steps"], line_no);
  TimeGrid grid = [&] {
    try {
      return TimeGrid(t_end, steps);
    } catch (const GridError& e) {
      throw ParseError(e.what(), line_no);
    }
  }();

  if (!std::getline(in, line)) throw ParseError("missing header", line_no + 1);
  ++line_no;
  if (line != "t,state,action,prob") {
    throw ParseError("expected header 't,state,action,prob'", line_no);
  }
  const std::size_t size =
      static_cast<std::size_t>(steps) * n_states * n_actions;
  std::vector<double> probs(size, 0.0);
  std::vector<bool> seen(size, false);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = SplitFields(line);
    if (f.size() != 4) throw ParseError("expected 4 fields", line_no);
    const double t = ParseDouble(f[0], line_no);
    const int state = ParseInt(f[1], line_no);
    const int action = ParseInt(f[2], line_no);
    const double p = ParseDouble(f[3], line_no);
    if (state < 1 || state > n_states) {
      throw ParseError("state " + f[1] + " out of range", line_no);
    }
    if (action < 1 || action > n_actions) {
      throw ParseError("action " + f[2] + " out of range", line_no);
    }
    const int k = static_cast<int>(std::lround(t / grid.step()));
    if (k < 0 || k >= steps || std::abs(grid.time(k) - t) > 1e-9 * (1 + t)) {
      throw ParseError("time " + f[0] + " is not an interval start", line_no);
    }
    const std::size_t idx =
        (static_cast<std::size_t>(k) * n_states + state - 1) * n_actions +
        action - 1;
    if (seen[idx]) throw ParseError("duplicate row", line_no);
    seen[idx] = true;
    probs[idx] = p;
  }
  try {
    return LocalStrategy(grid, n_states, n_actions, std::move(probs));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  }
}

LocalStrategy LoadStrategyCsv(const std::string& path, int n_states,
                              int n_actions) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open strategy file '" + path + "'", 0);
  return ReadStrategyCsv(in, n_states, n_actions);
}

}  // namespace mfg
