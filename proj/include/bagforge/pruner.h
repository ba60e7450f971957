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

#ifndef BAGFORGE_PRUNER_H_
#define BAGFORGE_PRUNER_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bagforge/bag.h"
#include "bagforge/domains.h"
#include "bagforge/feature_structure.h"
#include "bagforge/leaf_set.h"

namespace bagforge {

// Connectivity graph over {wfss} plus the uncovered bag positions. A node
// with no position is the wfss node.
struct ConnGraph {
  std::vector<std::optional<size_t>> nodes;
  std::vector<std::pair<size_t, size_t>> edges;  // indices into nodes, a < b
};

// True iff the undirected graph has at most one component.
bool is_connected(size_t node_count,
                  std::span<const std::pair<size_t, size_t>> edges);
inline bool is_connected(const ConnGraph &g) {
  return is_connected(g.nodes.size(), g.edges);
}

// The lexical connectivity graph of a bag, precomputed from the outer
// domains, and the per-wfss connectivity test built on it. Two nodes are
// linked when either lies in the outer domain of the other.
//
// Holds references to the bag and domain set; both must outlive it.
class PruneContext {
 public:
  // Throws GenerationError naming the components if the initial lexical
  // graph is disconnected.
  static PruneContext init_graph(const Bag &bag, const DomainSet &outer);

  const Bag &bag() const { return *bag_; }
  bool adjacent(size_t i, size_t j) const { return adjacency_[i] >> j & 1; }
  // Lexical edges (i < j), in order.
  std::vector<std::pair<size_t, size_t>> lex_edges() const;

  // Removes the leaves, adds a node for `sign`, and links it to every
  // surviving position it is outer-domain related to.
  ConnGraph update_graph(const FeatureStructure &sign, LeafSet leaves) const;

  // Accept iff the updated graph is connected (always when the leaves cover
  // the whole bag).
  bool test_wfss(const FeatureStructure &sign, LeafSet leaves) const;

  // Whether the wfss sign and the element at `position` are related.
  bool related(const FeatureStructure &sign, const AbstractSign &sign_abs,
               size_t position) const;

 private:
  PruneContext(const Bag &bag, const DomainSet &outer);

  const Bag *bag_;
  const DomainSet *outer_;
  std::vector<std::vector<AbstractSign>> lex_abs_;
  std::vector<uint64_t> adjacency_;
};

}  // namespace bagforge

#endif  // BAGFORGE_PRUNER_H_
