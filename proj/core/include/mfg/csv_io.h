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

#ifndef MFG_CSV_IO_H_
#define MFG_CSV_IO_H_

#include <iosfwd>
#include <string>

#include "mfg/best_response.h"
#include "mfg/population_path.h"
#include "mfg/simulation.h"
#include "mfg/strategy.h"

namespace mfg {

inline constexpr int kCsvFormatVersion = 1;

// Every file starts with a comment line "# format_version=1 kind=<kind> ...".
// Doubles are written in shortest round-trip form; states and actions are
// 1-based; players are numbered from 0.

// t,m_1,...,m_E
void WritePathCsv(std::ostream& out, const PopulationPath& path);
// t,state,action,prob; the comment line carries t_end and steps.
void WriteStrategyCsv(std::ostream& out, const LocalStrategy& strategy);
// t,state,value
void WriteValueCsv(std::ostream& out, const ValuePath& values);
// t,event_player,new_state,M_1,...,M_E (event fields empty for the initial
// record and synchronous steps)
void WriteTraceCsv(std::ostream& out, const SimTrace& trace);

// Reads a strategy written by WriteStrategyCsv (rows in any order, every
// (interval, state) row summing to 1). Throws ParseError with the line.
LocalStrategy ReadStrategyCsv(std::istream& in, int n_states, int n_actions);
LocalStrategy LoadStrategyCsv(const std::string& path, int n_states,
                              int n_actions);

std::string FormatDouble(double v);

}  // namespace mfg

#endif  // MFG_CSV_IO_H_
