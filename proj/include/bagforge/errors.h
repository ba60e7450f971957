// Copyright 2026 The bagforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BAGFORGE_ERRORS_H_
#define BAGFORGE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bagforge {

// Malformed or inconsistent input (grammar, bag, cache file, CLI data).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in a line-oriented text format.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string &message)
      : InputError("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A domain cache that was compiled from a different grammar.
class StaleCacheError : public InputError {
 public:
  using InputError::InputError;
};

// Generation refused on a precondition (empty or disconnected bag).
class GenerationError : public InputError {
 public:
  using InputError::InputError;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bagforge

#endif  // BAGFORGE_ERRORS_H_
