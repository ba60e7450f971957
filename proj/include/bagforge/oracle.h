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

#ifndef BAGFORGE_ORACLE_H_
#define BAGFORGE_ORACLE_H_

#include <set>
#include <string>
#include <vector>

#include "bagforge/bag.h"
#include "bagforge/domains.h"
#include "bagforge/feature_structure.h"
#include "bagforge/grammar.h"

namespace bagforge {

inline constexpr size_t kMaxOracleBag = 9;
inline constexpr size_t kMaxOracleDepth = 6;

// Every ordering of the bag accepted by an ordinary ordered chart parser as
// a `start` constituent spanning the whole string. Throws GenerationError
// for bags larger than kMaxOracleBag.
std::set<std::string> permutation_oracle(const Grammar &g, const Bag &bag,
                                         const FeatureStructure &start);

// Outer-domain triples read off all partial derivation trees of the start
// sign with at most `depth` levels of rule application. Preterminal leaves
// are instantiated with the lexicon. Throws GenerationError above
// kMaxOracleDepth.
DomainSet derivation_oracle(const Grammar &g, size_t depth);

// Oracle triples not covered by `outer`: a triple is covered when its binds
// are a subset of lex_in_outer for its sign and lexeme. Empty on success.
std::vector<std::string> uncovered_triples(const DomainSet &outer,
                                           const DomainSet &oracle);

}  // namespace bagforge

#endif  // BAGFORGE_ORACLE_H_
