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

#ifndef BAGFORGE_GRAMMAR_H_
#define BAGFORGE_GRAMMAR_H_

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bagforge/feature_structure.h"
#include "bagforge/restrictor.h"

namespace bagforge {

// A production mother -> daughters. Mother and daughters live in one
// structure (`rule`) so that rule variables are shared: the root has arcs
// `m` to the mother and `d0`, `d1`, ... to the daughters.
struct Production {
  std::string name;
  FeatureStructure rule;
  NodeId mother_node = 0;
  std::vector<NodeId> daughter_nodes;
  Symbol mother_category;
  std::vector<Symbol> daughter_categories;

  size_t arity() const { return daughter_nodes.size(); }
  FeatureStructure mother() const { return rule.sub(mother_node); }
  FeatureStructure daughter(size_t i) const {
    return rule.sub(daughter_nodes[i]);
  }
};

Symbol mother_label();
Symbol daughter_label(size_t i);

struct LexicalEntry {
  std::string word;
  FeatureStructure sign;
  // Connectivity-parameter paths present in the sign, in `param` declaration
  // order, skipping paths token identical to an earlier one. Positional bag
  // tags are assigned in this order.
  std::vector<Path> param_order;
};

class Grammar {
 public:
  const std::vector<Production> &productions() const { return productions_; }
  const std::map<std::string, std::vector<LexicalEntry>, std::less<>> &
  lexicon() const {
    return lexicon_;
  }
  // Entries for a word form; empty if unknown.
  std::span<const LexicalEntry> entries(std::string_view word) const;

  const FeatureStructure &start() const { return start_; }
  const std::vector<Path> &param_paths() const { return param_paths_; }
  const Restrictor &restrictor() const { return restrictor_; }

  // Categories of production mothers (N).
  const std::set<std::string> &nonterminal_categories() const {
    return nonterminals_;
  }
  // Categories of daughters that unify with some lexical entry (T).
  const std::set<std::string> &preterminal_categories() const {
    return preterminals_;
  }
  bool is_preterminal(size_t production, size_t daughter) const {
    return preterminal_slots_[production][daughter];
  }

  // Copy with a different start sign. Throws InputError if no production
  // mother unifies with it.
  Grammar with_start(const FeatureStructure &start) const;

  // Normalized text of rules, lexicon and paths (start excluded, since the
  // compiled domains do not depend on it).
  std::string canonical_text() const;
  // 16 hex digits of a 64-bit FNV-1a over canonical_text().
  std::string content_hash() const;

 private:
  friend Grammar parse_grammar(std::string_view text);
  void finalize();

  std::vector<Production> productions_;
  std::map<std::string, std::vector<LexicalEntry>, std::less<>> lexicon_;
  FeatureStructure start_;
  std::vector<Path> param_paths_;
  Restrictor restrictor_;
  std::set<std::string> nonterminals_;
  std::set<std::string> preterminals_;
  std::vector<std::vector<bool>> preterminal_slots_;
};

// Parses the line-oriented grammar format:
//
//   # comment
//   param sem.arg1 sem.arg2 sem.arg3
//   restrict cat sem.arg1 sem.arg2 sem.arg3
//   start S
//   rule r1: S[sem=#0] -> NP[sem.arg1=#1] VP[sem=#0, sem.arg2=#1]
//   lex dog: N[sem.reln=dog, sem.arg1=#1]
//
// `restrict` defaults to the category path plus the param paths; `start`
// defaults to S. Throws ParseError (with line) or InputError.
Grammar parse_grammar(std::string_view text);
Grammar load_grammar(const std::filesystem::path &path);

// Parses a start sign given as a category or full sign expression.
FeatureStructure parse_start(std::string_view text);

std::string read_file(const std::filesystem::path &path);

}  // namespace bagforge

#endif  // BAGFORGE_GRAMMAR_H_
