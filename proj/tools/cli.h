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

#ifndef MFG_TOOLS_CLI_H_
#define MFG_TOOLS_CLI_H_

#include <iosfwd>

namespace mfg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitRuntime = 3;

// Entry point of the `mfg` tool with injectable streams.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace mfg::cli

#endif  // MFG_TOOLS_CLI_H_
