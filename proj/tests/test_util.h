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

#ifndef BAGFORGE_TESTS_TEST_UTIL_H_
#define BAGFORGE_TESTS_TEST_UTIL_H_

#include <string>

#include "bagforge/bag.h"
#include "bagforge/grammar.h"

namespace bagforge::testing {

inline std::string data_path(const std::string &rel) {
  return std::string(BAGFORGE_DATA_DIR) + "/" + rel;
}

inline const Grammar &simple() {
  static const Grammar g = load_grammar(data_path("grammars/simple.gr"));
  return g;
}

inline const Grammar &simple_vintra() {
  static const Grammar g = load_grammar(data_path("grammars/simple_vintra.gr"));
  return g;
}

inline const Grammar &bench_grammar() {
  static const Grammar g = load_grammar(data_path("grammars/bench.gr"));
  return g;
}

}  // namespace bagforge::testing

#endif  // BAGFORGE_TESTS_TEST_UTIL_H_
