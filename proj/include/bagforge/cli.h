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

#ifndef BAGFORGE_CLI_H_
#define BAGFORGE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace bagforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitInvariant = 4;

// Runs one command line (without the program name) and returns the exit
// status. Commands: compile, generate, oracle, bench, dump-domains.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

}  // namespace bagforge

#endif  // BAGFORGE_CLI_H_
