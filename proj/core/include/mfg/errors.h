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

#ifndef MFG_ERRORS_H_
#define MFG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mfg {

// Base class for every error raised by the library.
class MfgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A game specification (or strategy) violates a structural invariant.
class ValidationError : public MfgError {
 public:
  using MfgError::MfgError;
};

// A spec or strategy file could not be parsed. `line()` is 1-based, 0 when
// unknown.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, int line)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " +
                                       message
                                 : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Incompatible time grids, or a grid too coarse for an explicit scheme.
class GridError : public MfgError {
 public:
  using MfgError::MfgError;
};

// A numerical procedure cannot deliver the requested accuracy.
class NumericalError : public MfgError {
 public:
  using MfgError::MfgError;
};

}  // namespace mfg

#endif  // MFG_ERRORS_H_
