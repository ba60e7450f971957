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

#ifndef BAGFORGE_CHART_H_
#define BAGFORGE_CHART_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bagforge/bag.h"
#include "bagforge/domains.h"
#include "bagforge/feature_structure.h"
#include "bagforge/grammar.h"
#include "bagforge/leaf_set.h"

namespace bagforge {

using EdgeId = uint32_t;

// A chart edge. Lexical edges have rule == -1. Active edges carry the
// partially instantiated rule in `instance` and have dot < arity; inactive
// edges carry the constituent's sign.
struct Edge {
  EdgeId id = 0;
  int rule = -1;
  size_t position = 0;  // lexical edges only
  FeatureStructure sign;
  FeatureStructure instance;
  LeafSet leaves;
  size_t dot = 0;
  size_t arity = 0;
  std::vector<EdgeId> children;

  bool lexical() const { return rule < 0; }
  bool inactive() const { return dot == arity; }
  // Category the edge needs next (active) or provides (inactive).
  Symbol category() const;
  // Signs of the daughters still to be found.
  std::vector<FeatureStructure> remaining() const;
};

// One lexical edge per consistent sign of each bag element.
std::vector<Edge> seed_chart(const Bag &bag);

// Relaxed fundamental rule: advances `active` over `inactive` when their
// leaves are disjoint and the next daughter unifies. The result has no id.
std::optional<Edge> combine_edges(const Grammar &g, const Edge &active,
                                  const Edge &inactive);

// Starts production `rule` from an inactive edge for its first daughter.
std::optional<Edge> start_rule(const Grammar &g, size_t rule,
                               const Edge &first);

enum class AgendaOrder { kFifo, kLifo, kRandom };

struct GenOptions {
  bool prune = true;
  bool all_solutions = true;
  AgendaOrder order = AgendaOrder::kFifo;
  uint64_t seed = 0;  // kRandom only
  // Verify that every inactive edge covers a tag-connected part of the bag.
  bool check_connected = false;
  size_t max_edges = 0;  // 0: no limit
  std::ostream *trace = nullptr;  // connectivity test log
  std::optional<FeatureStructure> start;  // default: the grammar's
};

struct GenStats {
  size_t edges_total = 0;     // admitted edges, active and inactive
  size_t edges_inactive = 0;
  size_t pruned = 0;          // inactive edges rejected by the test
  double elapsed_s = 0;
};

struct Derivation {
  std::string words;
  std::string tree;  // `((the dog) barked)`; unary rules are not shown
  EdgeId edge = 0;
};

struct GenResult {
  std::vector<std::string> strings;  // sorted, unique
  std::vector<Derivation> derivations;
  std::vector<Edge> edges;  // by id
  GenStats stats;
};

std::string spell(const GenResult &r, const Bag &bag, EdgeId edge);
std::string bracket(const GenResult &r, const Bag &bag, EdgeId edge);

// Bottom-up agenda-driven generation from a bag. With opts.prune set, every
// new inactive edge is tested against `outer` and dropped if it would
// disconnect the graph. Throws GenerationError for empty or disconnected
// bags and when opts.prune is set without domains.
GenResult generate(const Grammar &g, const Bag &bag, const DomainSet *outer,
                   const GenOptions &opts = {});

}  // namespace bagforge

#endif  // BAGFORGE_CHART_H_
