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

#ifndef MFG_VALIDATE_H_
#define MFG_VALIDATE_H_

#include <optional>
#include <string>
#include <vector>

#include "mfg/game.h"

namespace mfg {

enum class IssueKind {
  kShape,         // sizes of labels, m0 or coefficient arrays
  kInitial,       // m0 off the simplex
  kHorizon,       // horizon kind/value incompatible with the time mode
  kGenerator,     // Q row sum != 0 or negative off-diagonal rate
  kStochastic,    // P row sum != 1 or negative entry
  kCost,          // non-finite cost
  kContinuity,    // cost flagged discontinuous in m
};

struct ValidationIssue {
  IssueKind kind;
  std::string message;
  // 0-based simplex vertex where the violation was found, if any.
  std::optional<int> vertex;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  // True when the only issues are continuity flags: the spec can be
  // integrated and solved, though equilibrium existence is not guaranteed.
  bool structurally_valid() const;
  std::string ToString() const;
};

// Lists every violated invariant; never throws.
ValidationReport ValidateSpec(const GameSpec& spec);

// Throws ValidationError unless the spec is structurally valid.
void RequireValid(const GameSpec& spec);

}  // namespace mfg

#endif  // MFG_VALIDATE_H_
