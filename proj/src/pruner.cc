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

#include "bagforge/pruner.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "bagforge/errors.h"

namespace bagforge {

bool is_connected(size_t node_count,
                  std::span<const std::pair<size_t, size_t>> edges) {
  if (node_count <= 1) return true;
  std::vector<std::vector<size_t>> adj(node_count);
  for (const auto &[a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(node_count, false);
  std::vector<size_t> queue{0};
  seen[0] = true;
  size_t reached = 1;
  for (size_t head = 0; head < queue.size(); ++head) {
    for (size_t next : adj[queue[head]]) {
      if (seen[next]) continue;
      seen[next] = true;
      ++reached;
      queue.push_back(next);
    }
  }
  return reached == node_count;
}

PruneContext::PruneContext(const Bag &bag, const DomainSet &outer)
    : bag_(&bag), outer_(&outer) {}

PruneContext PruneContext::init_graph(const Bag &bag, const DomainSet &outer) {
  if (bag.size() > LeafSet::kMaxPositions) {
    throw GenerationError("bags are limited to 64 elements");
  }
  PruneContext ctx(bag, outer);
  const size_t n = bag.size();
  ctx.lex_abs_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    for (const FeatureStructure &s : bag[i].signs) {
      ctx.lex_abs_[i].push_back(restrict(s, outer.restrictor()));
    }
  }
  ctx.adjacency_.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool linked = false;
      for (size_t a = 0; a < bag[i].signs.size() && !linked; ++a) {
        for (size_t b = 0; b < bag[j].signs.size() && !linked; ++b) {
          const auto &si = bag[i].signs[a];
          const auto &sj = bag[j].signs[b];
          linked = !lex_in_outer(outer, ctx.lex_abs_[i][a], si,
                                 ctx.lex_abs_[j][b], sj)
                        .empty() ||
                   !lex_in_outer(outer, ctx.lex_abs_[j][b], sj,
                                 ctx.lex_abs_[i][a], si)
                        .empty();
        }
      }
      if (linked) {
        ctx.adjacency_[i] |= uint64_t{1} << j;
        ctx.adjacency_[j] |= uint64_t{1} << i;
      }
    }
  }

  auto edges = ctx.lex_edges();
  if (!is_connected(n, edges)) {
    // Components of the lexical graph, for the diagnostic.
    std::vector<std::vector<size_t>> comps;
    std::vector<bool> seen(n, false);
    for (size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      std::vector<size_t> comp{s};
      seen[s] = true;
      for (size_t h = 0; h < comp.size(); ++h) {
        for (size_t t = 0; t < n; ++t) {
          if (!seen[t] && ctx.adjacent(comp[h], t)) {
            seen[t] = true;
            comp.push_back(t);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    throw GenerationError("initial connectivity graph has " +
                          std::to_string(comps.size()) +
                          " components: " + describe_components(bag, comps));
  }
  return ctx;
}

std::vector<std::pair<size_t, size_t>> PruneContext::lex_edges() const {
  std::vector<std::pair<size_t, size_t>> edges;
  for (size_t i = 0; i < adjacency_.size(); ++i) {
    for (size_t j = i + 1; j < adjacency_.size(); ++j) {
      if (adjacent(i, j)) edges.emplace_back(i, j);
    }
  }
  return edges;
}

bool PruneContext::related(const FeatureStructure &sign,
                           const AbstractSign &sign_abs,
                           size_t position) const {
  const BagElement &e = (*bag_)[position];
  for (size_t a = 0; a < e.signs.size(); ++a) {
    const AbstractSign &lex_abs = lex_abs_[position][a];
    if (!lex_in_outer(*outer_, sign_abs, sign, lex_abs, e.signs[a]).empty()) {
      return true;
    }
    if (!lex_in_outer(*outer_, lex_abs, e.signs[a], sign_abs, sign).empty()) {
      return true;
    }
  }
  return false;
}

ConnGraph PruneContext::update_graph(const FeatureStructure &sign,
                                     LeafSet leaves) const {
  ConnGraph g;
  const size_t n = bag_->size();
  // Step 1: drop the leaves. Step 2: add the wfss node (index 0).
  g.nodes.push_back(std::nullopt);
  std::vector<size_t> node_of(n, SIZE_MAX);
  for (size_t i = 0; i < n; ++i) {
    if (leaves.contains(i)) continue;
    node_of[i] = g.nodes.size();
    g.nodes.push_back(i);
  }
  for (size_t i = 0; i < n; ++i) {
    if (node_of[i] == SIZE_MAX) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (node_of[j] != SIZE_MAX && adjacent(i, j)) {
        g.edges.emplace_back(node_of[i], node_of[j]);
      }
    }
  }
  // Step 3: link the wfss to what lies in its outer domain.
  if (g.nodes.size() > 1) {
    AbstractSign sign_abs = restrict(sign, outer_->restrictor());
    for (size_t i = 0; i < n; ++i) {
      if (node_of[i] != SIZE_MAX && related(sign, sign_abs, i)) {
        g.edges.emplace_back(0, node_of[i]);
      }
    }
  }
  return g;
}

bool PruneContext::test_wfss(const FeatureStructure &sign,
                             LeafSet leaves) const {
  if (leaves == LeafSet::all(bag_->size())) return true;
  return is_connected(update_graph(sign, leaves));
}

}  // namespace bagforge
