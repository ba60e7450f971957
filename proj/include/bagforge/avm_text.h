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

#ifndef BAGFORGE_AVM_TEXT_H_
#define BAGFORGE_AVM_TEXT_H_

#include <map>
#include <string>
#include <string_view>

#include "bagforge/feature_structure.h"

namespace bagforge {

// Rule-scoped shared variables, keyed by the name after '#'.
using VariableScope = std::map<std::string, NodeId, std::less<>>;

// Reads the sign notation
//
//   Cat[path=value, path=value, ...]
//
// where value is an atom, `#n` (shared variable), `@t` (tagged index),
// `#n@t`, `#n=atom`, `_` (fresh variable) or `[]`. The category prefix is
// optional. Throws std::invalid_argument with a column-free message on error.
NodeId read_sign(FsBuilder &builder, std::string_view text, size_t &pos,
                 VariableScope &scope);

// Parses a complete sign expression.
FeatureStructure parse_sign(std::string_view text);

// Skips spaces and tabs.
void skip_blanks(std::string_view text, size_t &pos);

// Reads a bare token (category, atom, word): stops at blanks and `[],=#@:`.
std::string_view read_token(std::string_view text, size_t &pos);

}  // namespace bagforge

#endif  // BAGFORGE_AVM_TEXT_H_
