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

#include "bagforge/feature_structure.h"

#include <algorithm>
#include <map>
#include <utility>

namespace bagforge {

Symbol category_label() {
  static const Symbol kCat("cat");
  return kCat;
}

FeatureStructure::FeatureStructure() { nodes_.push_back(Node{}); }

FeatureStructure FeatureStructure::atom(Symbol value) {
  FeatureStructure fs;
  fs.nodes_[0].kind = NodeKind::kAtom;
  fs.nodes_[0].value = value;
  return fs;
}

FeatureStructure FeatureStructure::index(Symbol tag) {
  FeatureStructure fs;
  fs.nodes_[0].kind = NodeKind::kIndex;
  fs.nodes_[0].value = tag;
  return fs;
}

std::optional<NodeId> FeatureStructure::child(NodeId n, Symbol label) const {
  for (const Arc &arc : arcs(n)) {
    if (arc.label == label) return arc.target;
  }
  return std::nullopt;
}

std::optional<NodeId> FeatureStructure::resolve(NodeId from,
                                                const Path &path) const {
  NodeId n = from;
  for (Symbol label : path.labels()) {
    auto next = child(n, label);
    if (!next) return std::nullopt;
    n = *next;
  }
  return n;
}

FeatureStructure FeatureStructure::sub(NodeId n) const {
  FeatureStructure out;
  out.nodes_.clear();
  std::vector<NodeId> map(nodes_.size(), UINT32_MAX);
  // Allocate ids in DFS preorder, then fill arcs.
  std::vector<NodeId> order;
  std::vector<NodeId> stack{n};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (map[cur] != UINT32_MAX) continue;
    map[cur] = static_cast<NodeId>(order.size());
    order.push_back(cur);
    auto a = arcs(cur);
    for (auto it = a.rbegin(); it != a.rend(); ++it) stack.push_back(it->target);
  }
  for (NodeId old : order) {
    Node node = nodes_[old];
    node.arc_begin = static_cast<uint32_t>(out.arcs_.size());
    for (const Arc &arc : arcs(old)) {
      out.arcs_.push_back(Arc{arc.label, map[arc.target]});
    }
    out.nodes_.push_back(node);
  }
  out.root_ = 0;
  return out;
}

Symbol FeatureStructure::category() const {
  auto n = child(root_, category_label());
  if (!n || kind(*n) != NodeKind::kAtom) return Symbol();
  return value(*n);
}

// ---------------------------------------------------------------------------
// FsBuilder

NodeId FsBuilder::add(NodeKind kind, Symbol value) {
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{kind, value, {}, id});
  return id;
}

NodeId FsBuilder::add_variable() { return add(NodeKind::kVariable, Symbol()); }
NodeId FsBuilder::add_atom(Symbol value) { return add(NodeKind::kAtom, value); }
NodeId FsBuilder::add_index(Symbol tag) { return add(NodeKind::kIndex, tag); }
NodeId FsBuilder::add_complex() { return add(NodeKind::kComplex, Symbol()); }

NodeId FsBuilder::import(const FeatureStructure &fs, std::vector<NodeId> *map) {
  NodeId base = static_cast<NodeId>(nodes_.size());
  for (NodeId n = 0; n < fs.node_count(); ++n) {
    add(fs.kind(n), fs.value(n));
  }
  for (NodeId n = 0; n < fs.node_count(); ++n) {
    auto &arcs = nodes_[base + n].arcs;
    for (const Arc &arc : fs.arcs(n)) {
      arcs.emplace_back(arc.label, base + arc.target);
    }
  }
  if (map != nullptr) {
    map->resize(fs.node_count());
    for (NodeId n = 0; n < fs.node_count(); ++n) (*map)[n] = base + n;
  }
  return base + fs.root();
}

NodeId FsBuilder::find(NodeId n) {
  NodeId root = n;
  while (nodes_[root].forward != root) root = nodes_[root].forward;
  while (nodes_[n].forward != root) {
    NodeId next = nodes_[n].forward;
    nodes_[n].forward = root;
    n = next;
  }
  return root;
}

std::optional<NodeId> FsBuilder::ensure_path(NodeId from, const Path &path) {
  NodeId n = find(from);
  for (Symbol label : path.labels()) {
    if (nodes_[n].kind == NodeKind::kVariable) {
      nodes_[n].kind = NodeKind::kComplex;
    }
    if (nodes_[n].kind != NodeKind::kComplex) return std::nullopt;
    NodeId next = UINT32_MAX;
    for (auto &[l, t] : nodes_[n].arcs) {
      if (l == label) {
        next = find(t);
        break;
      }
    }
    if (next == UINT32_MAX) {
      next = add_variable();
      nodes_[n].arcs.emplace_back(label, next);
    }
    n = next;
  }
  return n;
}

bool FsBuilder::unify(NodeId a, NodeId b) {
  std::vector<std::pair<NodeId, NodeId>> pending{{a, b}};
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    x = find(x);
    y = find(y);
    if (x == y) continue;
    Node &nx = nodes_[x];
    Node &ny = nodes_[y];
    if (ny.kind == NodeKind::kVariable) {
      ny.forward = x;
      continue;
    }
    if (nx.kind == NodeKind::kVariable) {
      nx.forward = y;
      continue;
    }
    if (nx.kind != ny.kind) return false;
    switch (nx.kind) {
      case NodeKind::kAtom:
      case NodeKind::kIndex:
        if (nx.value != ny.value) return false;
        ny.forward = x;
        break;
      case NodeKind::kComplex: {
        ny.forward = x;
        auto moved = std::move(ny.arcs);
        ny.arcs.clear();
        for (auto &[label, target] : moved) {
          bool found = false;
          for (auto &[l, t] : nodes_[x].arcs) {
            if (l == label) {
              pending.emplace_back(t, target);
              found = true;
              break;
            }
          }
          if (!found) nodes_[x].arcs.emplace_back(label, target);
        }
        break;
      }
      case NodeKind::kVariable:
        break;
    }
  }
  return true;
}

std::optional<FeatureStructure> FsBuilder::build(NodeId root) {
  constexpr NodeId kUnseen = UINT32_MAX;
  constexpr NodeId kOpen = UINT32_MAX - 1;
  std::vector<NodeId> map(nodes_.size(), kUnseen);
  FeatureStructure out;
  out.nodes_.clear();

  // Preorder id assignment with an explicit stack; a node re-entered while
  // still open closes a cycle.
  struct Frame {
    NodeId node;
    size_t next_arc;
  };
  std::vector<NodeId> order;
  std::vector<Frame> stack;
  root = find(root);
  map[root] = kOpen;
  stack.push_back({root, 0});
  order.push_back(root);
  std::vector<NodeId> ids(nodes_.size(), kUnseen);
  ids[root] = 0;
  while (!stack.empty()) {
    Frame &frame = stack.back();
    auto &arcs = nodes_[frame.node].arcs;
    if (frame.next_arc == arcs.size()) {
      map[frame.node] = ids[frame.node];
      stack.pop_back();
      continue;
    }
    NodeId target = find(arcs[frame.next_arc].second);
    arcs[frame.next_arc].second = target;
    ++frame.next_arc;
    if (map[target] == kOpen) return std::nullopt;
    if (map[target] != kUnseen) continue;
    map[target] = kOpen;
    ids[target] = static_cast<NodeId>(order.size());
    order.push_back(target);
    stack.push_back({target, 0});
  }

  out.nodes_.reserve(order.size());
  for (NodeId old : order) {
    const Node &node = nodes_[old];
    FeatureStructure::Node copy;
    copy.kind = node.kind;
    copy.value = node.value;
    copy.arc_begin = static_cast<uint32_t>(out.arcs_.size());
    copy.arc_count = static_cast<uint32_t>(node.arcs.size());
    std::vector<Arc> arcs;
    arcs.reserve(node.arcs.size());
    for (const auto &[label, target] : node.arcs) {
      arcs.push_back(Arc{label, ids[find(target)]});
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc &a, const Arc &b) {
      return a.label.id() < b.label.id();
    });
    out.arcs_.insert(out.arcs_.end(), arcs.begin(), arcs.end());
    out.nodes_.push_back(copy);
  }
  out.root_ = 0;
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

std::optional<FeatureStructure> unify(const FeatureStructure &a,
                                      const FeatureStructure &b) {
  FsBuilder builder;
  NodeId ra = builder.import(a);
  NodeId rb = builder.import(b);
  if (!builder.unify(ra, rb)) return std::nullopt;
  return builder.build(ra);
}

std::optional<FeatureStructure> unify_at(const FeatureStructure &host,
                                         NodeId at,
                                         const FeatureStructure &guest) {
  FsBuilder builder;
  std::vector<NodeId> map;
  NodeId root = builder.import(host, &map);
  NodeId g = builder.import(guest);
  if (!builder.unify(map[at], g)) return std::nullopt;
  return builder.build(root);
}

bool token_identical(const FeatureStructure &f, const Path &p, const Path &q) {
  auto a = f.resolve(p);
  auto b = f.resolve(q);
  return a && b && *a == *b;
}

namespace {

// Follows `path` as far as it resolves. Returns the last node reached and the
// number of labels consumed; nullopt if the walk is blocked by an atom or
// index, in which case the path can never exist.
std::optional<std::pair<NodeId, size_t>> walk(const FeatureStructure &f,
                                              NodeId from, const Path &path) {
  NodeId n = from;
  for (size_t i = 0; i < path.size(); ++i) {
    auto next = f.child(n, path[i]);
    if (!next) {
      NodeKind k = f.kind(n);
      if (k == NodeKind::kAtom || k == NodeKind::kIndex) return std::nullopt;
      return std::make_pair(n, i);
    }
    n = *next;
  }
  return std::make_pair(n, path.size());
}

}  // namespace

bool shared_under_extension(const FeatureStructure &f, NodeId from_a,
                            const Path &p, NodeId from_b, const Path &q) {
  auto a = walk(f, from_a, p);
  auto b = walk(f, from_b, q);
  if (!a || !b || a->first != b->first) return false;
  size_t rest_a = p.size() - a->second;
  size_t rest_b = q.size() - b->second;
  if (rest_a != rest_b) return false;
  for (size_t i = 0; i < rest_a; ++i) {
    if (p[a->second + i] != q[b->second + i]) return false;
  }
  return true;
}

bool subsumes(const FeatureStructure &general,
              const FeatureStructure &specific) {
  std::vector<NodeId> map(general.node_count(), UINT32_MAX);
  std::vector<std::pair<NodeId, NodeId>> pending{
      {general.root(), specific.root()}};
  while (!pending.empty()) {
    auto [g, s] = pending.back();
    pending.pop_back();
    if (map[g] != UINT32_MAX) {
      if (map[g] != s) return false;
      continue;
    }
    map[g] = s;
    switch (general.kind(g)) {
      case NodeKind::kVariable:
        break;
      case NodeKind::kAtom:
      case NodeKind::kIndex:
        if (specific.kind(s) != general.kind(g) ||
            specific.value(s) != general.value(g)) {
          return false;
        }
        break;
      case NodeKind::kComplex:
        if (specific.kind(s) != NodeKind::kComplex) {
          if (!general.arcs(g).empty()) return false;
          // An empty complex node only says "some structure here".
          if (specific.kind(s) != NodeKind::kVariable) return false;
          break;
        }
        for (const Arc &arc : general.arcs(g)) {
          auto t = specific.child(s, arc.label);
          if (!t) return false;
          pending.emplace_back(arc.target, *t);
        }
        break;
    }
  }
  return true;
}

namespace {

void collect_leaves(const FeatureStructure &fs, NodeId n, Path &prefix,
                    std::vector<std::pair<Path, NodeId>> &out) {
  if (fs.kind(n) != NodeKind::kComplex || fs.arcs(n).empty()) {
    out.emplace_back(prefix, n);
    return;
  }
  for (const Arc &arc : fs.arcs(n)) {
    std::vector<Symbol> labels = prefix.labels();
    labels.push_back(arc.label);
    Path child(std::move(labels));
    collect_leaves(fs, arc.target, child, out);
  }
}

std::string leaf_value(const FeatureStructure &fs, NodeId n) {
  switch (fs.kind(n)) {
    case NodeKind::kAtom:
      return std::string(fs.value(n).str());
    case NodeKind::kIndex:
      return "@" + std::string(fs.value(n).str());
    case NodeKind::kVariable:
      return "_";
    case NodeKind::kComplex:
      return "[]";
  }
  return "";
}

}  // namespace

std::string to_avm(const FeatureStructure &fs) {
  if (fs.kind(fs.root()) != NodeKind::kComplex) {
    return leaf_value(fs, fs.root());
  }
  std::vector<std::pair<Path, NodeId>> leaves;
  Path empty;
  collect_leaves(fs, fs.root(), empty, leaves);
  std::sort(leaves.begin(), leaves.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });

  std::map<NodeId, int> uses;
  for (const auto &[path, node] : leaves) ++uses[node];

  std::string head;
  std::string body;
  std::map<NodeId, int> classes;
  const Path cat_path(std::vector<Symbol>{category_label()});
  for (const auto &[path, node] : leaves) {
    if (path == cat_path && fs.kind(node) == NodeKind::kAtom &&
        uses[node] == 1) {
      head = std::string(fs.value(node).str());
      continue;
    }
    std::string value;
    if (uses[node] > 1) {
      auto it = classes.find(node);
      if (it == classes.end()) {
        it = classes.emplace(node, static_cast<int>(classes.size())).first;
      }
      value = "#" + std::to_string(it->second);
      NodeKind k = fs.kind(node);
      if (k == NodeKind::kIndex) value += leaf_value(fs, node);
      if (k == NodeKind::kAtom) value += "=" + leaf_value(fs, node);
    } else {
      value = leaf_value(fs, node);
    }
    if (!body.empty()) body += ", ";
    body += path.str() + "=" + value;
  }
  if (body.empty()) return head.empty() ? "[]" : head;
  return head + "[" + body + "]";
}

}  // namespace bagforge
