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

#ifndef BAGFORGE_FEATURE_STRUCTURE_H_
#define BAGFORGE_FEATURE_STRUCTURE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bagforge/symbol.h"

namespace bagforge {

using NodeId = uint32_t;

enum class NodeKind : uint8_t {
  kVariable,  // unconstrained; unifies with anything
  kAtom,      // atomic symbol
  kIndex,     // semantic index carrying a concrete type tag
  kComplex,   // attribute -> node mapping
};

struct Arc {
  Symbol label;
  NodeId target;
};

// Immutable rooted acyclic attribute-value graph with reentrancy.
//
// Nodes are stored contiguously; two paths reaching the same NodeId are token
// identical. Instances are built through FsBuilder or as results of
// unification, never mutated afterwards, so they are safe to share between
// threads.
class FeatureStructure {
 public:
  // A single unconstrained variable.
  FeatureStructure();

  static FeatureStructure atom(Symbol value);
  static FeatureStructure index(Symbol tag);

  NodeId root() const { return root_; }
  size_t node_count() const { return nodes_.size(); }

  NodeKind kind(NodeId n) const { return nodes_[n].kind; }
  // Atom value or index tag; empty for variables and complex nodes.
  Symbol value(NodeId n) const { return nodes_[n].value; }
  std::span<const Arc> arcs(NodeId n) const {
    return {arcs_.data() + nodes_[n].arc_begin, nodes_[n].arc_count};
  }

  std::optional<NodeId> child(NodeId n, Symbol label) const;
  std::optional<NodeId> resolve(const Path &path) const {
    return resolve(root_, path);
  }
  std::optional<NodeId> resolve(NodeId from, const Path &path) const;

  // The substructure rooted at n, as an independent value.
  FeatureStructure sub(NodeId n) const;

  // Atom at the category path, or empty.
  Symbol category() const;

 private:
  friend class FsBuilder;

  struct Node {
    NodeKind kind = NodeKind::kVariable;
    Symbol value;
    uint32_t arc_begin = 0;
    uint32_t arc_count = 0;
  };

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  NodeId root_ = 0;
};

// The attribute holding a sign's syntactic category.
Symbol category_label();

// Mutable union-find arena used to construct structures and to unify them.
// Node ids returned by the builder are arena ids, unrelated to the ids of the
// FeatureStructure produced by build().
class FsBuilder {
 public:
  NodeId add_variable();
  NodeId add_atom(Symbol value);
  NodeId add_index(Symbol tag);
  NodeId add_complex();

  // Copies fs into the arena and returns the arena id of its root. `map`, if
  // given, receives the arena id of every fs node.
  NodeId import(const FeatureStructure &fs, std::vector<NodeId> *map = nullptr);

  // Walks `path` from `from`, creating complex nodes and a trailing variable
  // as needed. Fails if an atom or index blocks the walk.
  std::optional<NodeId> ensure_path(NodeId from, const Path &path);

  // Destructive unification inside the arena. On failure the arena is left
  // in an unspecified (but memory-safe) state.
  bool unify(NodeId a, NodeId b);

  NodeId find(NodeId n);

  // Extracts the structure reachable from `root`. Returns nullopt if it is
  // cyclic.
  std::optional<FeatureStructure> build(NodeId root);

 private:
  struct Node {
    NodeKind kind = NodeKind::kVariable;
    Symbol value;
    std::vector<std::pair<Symbol, NodeId>> arcs;
    NodeId forward;
  };

  NodeId add(NodeKind kind, Symbol value);

  std::vector<Node> nodes_;
};

// Most general unifier of a and b, or nullopt on clash. Inputs are untouched.
std::optional<FeatureStructure> unify(const FeatureStructure &a,
                                      const FeatureStructure &b);

// Unifies `guest` into the node `at` of `host`; the result keeps host's root.
std::optional<FeatureStructure> unify_at(const FeatureStructure &host,
                                         NodeId at,
                                         const FeatureStructure &guest);

// True iff both paths resolve in f to the same node.
bool token_identical(const FeatureStructure &f, const Path &p, const Path &q);

// True iff from_a:p and from_b:q would be token identical in every extension
// of f: the walks stop at the same node with equal unconsumed suffixes.
bool shared_under_extension(const FeatureStructure &f, NodeId from_a,
                            const Path &p, NodeId from_b, const Path &q);

// True iff every constraint of `general` (values and reentrancies) holds in
// `specific`.
bool subsumes(const FeatureStructure &general,
              const FeatureStructure &specific);

inline bool isomorphic(const FeatureStructure &a, const FeatureStructure &b) {
  return subsumes(a, b) && subsumes(b, a);
}

// Debug print form, e.g. `NP[sem.arg1=#0@1, sem.reln=dog]`. Leaf paths are
// listed alphabetically; `#n` marks nodes reachable by more than one path
// (numbered in print order), `@t` an index tag and `_` an unshared variable.
std::string to_avm(const FeatureStructure &fs);

}  // namespace bagforge

#endif  // BAGFORGE_FEATURE_STRUCTURE_H_
