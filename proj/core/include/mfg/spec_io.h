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

#ifndef MFG_SPEC_IO_H_
#define MFG_SPEC_IO_H_

#include <string>

#include "mfg/game.h"

namespace mfg {

inline constexpr int kSpecFormatVersion = 1;

// Reads a game spec in the YAML grammar of docs/spec_format.md. Throws
// ParseError (with the offending line) for malformed input, unknown keys,
// labels or out-of-range indices. Invariants such as m0 summing to 1 are
// left to ValidateSpec.
GameSpec ParseSpec(const std::string& text);
GameSpec LoadSpec(const std::string& path);

// Serializes an affine spec; ParseSpec(WriteSpec(s)) reproduces every
// coefficient. Throws ValidationError for evaluator-backed fields.
std::string WriteSpec(const GameSpec& spec);

}  // namespace mfg

#endif  // MFG_SPEC_IO_H_
