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

#include "bagforge/chart.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>

#include "bagforge/errors.h"
#include "bagforge/pruner.h"

namespace bagforge {

namespace {

NodeId daughter_node(const FeatureStructure &instance, size_t i) {
  return *instance.child(instance.root(), daughter_label(i));
}

Symbol category_at(const FeatureStructure &fs, NodeId n) {
  auto c = fs.child(n, category_label());
  if (!c || fs.kind(*c) != NodeKind::kAtom) return Symbol();
  return fs.value(*c);
}

}  // namespace

Symbol Edge::category() const {
  if (inactive()) return sign.category();
  return category_at(instance, daughter_node(instance, dot));
}

std::vector<FeatureStructure> Edge::remaining() const {
  std::vector<FeatureStructure> out;
  for (size_t i = dot; i < arity; ++i) {
    out.push_back(instance.sub(daughter_node(instance, i)));
  }
  return out;
}

std::vector<Edge> seed_chart(const Bag &bag) {
  std::vector<Edge> out;
  for (size_t i = 0; i < bag.size(); ++i) {
    for (const FeatureStructure &s : bag[i].signs) {
      Edge e;
      e.position = i;
      e.sign = s;
      e.leaves = LeafSet::single(i);
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::optional<Edge> combine_edges(const Grammar &g, const Edge &active,
                                  const Edge &inactive) {
  if (active.inactive() || !inactive.inactive()) return std::nullopt;
  if (!active.leaves.disjoint(inactive.leaves)) return std::nullopt;
  const Production &p = g.productions()[active.rule];
  if (p.daughter_categories[active.dot] != inactive.sign.category()) {
    return std::nullopt;
  }
  auto merged = unify_at(active.instance,
                         daughter_node(active.instance, active.dot),
                         inactive.sign);
  if (!merged) return std::nullopt;
  Edge e;
  e.rule = active.rule;
  e.leaves = active.leaves | inactive.leaves;
  e.dot = active.dot + 1;
  e.arity = active.arity;
  e.children = active.children;
  e.children.push_back(inactive.id);
  if (e.inactive()) {
    e.sign = merged->sub(*merged->child(merged->root(), mother_label()));
  } else {
    e.instance = std::move(*merged);
  }
  return e;
}

std::optional<Edge> start_rule(const Grammar &g, size_t rule,
                               const Edge &first) {
  const Production &p = g.productions()[rule];
  Edge empty;
  empty.rule = static_cast<int>(rule);
  empty.instance = p.rule;
  empty.arity = p.arity();
  return combine_edges(g, empty, first);
}

std::string spell(const GenResult &r, const Bag &bag, EdgeId edge) {
  const Edge &e = r.edges[edge];
  if (e.lexical()) return bag[e.position].word;
  std::string out;
  for (EdgeId c : e.children) {
    if (!out.empty()) out += ' ';
    out += spell(r, bag, c);
  }
  return out;
}

std::string bracket(const GenResult &r, const Bag &bag, EdgeId edge) {
  const Edge &e = r.edges[edge];
  if (e.lexical()) return bag[e.position].word;
  if (e.children.size() == 1) return bracket(r, bag, e.children[0]);
  std::string out = "(";
  for (size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += ' ';
    out += bracket(r, bag, e.children[i]);
  }
  return out + ")";
}

namespace {

class Generator {
 public:
  Generator(const Grammar &g, const Bag &bag, const DomainSet *outer,
            const GenOptions &opts)
      : g_(g), bag_(bag), opts_(opts), rng_(opts.seed),
        full_(LeafSet::all(bag.size())),
        start_(opts.start ? *opts.start : g.start()) {
    if (opts.prune) {
      if (!outer) throw GenerationError("pruning requires compiled domains");
      prune_.emplace(PruneContext::init_graph(bag, *outer));
    }
    if (opts.check_connected) {
      tag_adj_.assign(bag.size(), 0);
      for (size_t i = 0; i < bag.size(); ++i) {
        for (size_t j = 0; j < bag.size(); ++j) {
          if (i == j) continue;
          for (Symbol t : bag[i].tags) {
            if (bag[j].tags.count(t)) {
              tag_adj_[i] |= uint64_t{1} << j;
              break;
            }
          }
        }
      }
    }
    for (size_t r = 0; r < g.productions().size(); ++r) {
      by_first_[g.productions()[r].daughter_categories[0]].push_back(r);
    }
  }

  GenResult run() {
    auto t0 = std::chrono::steady_clock::now();
    for (Edge &e : seed_chart(bag_)) {
      admit(std::move(e));
      if (done_) break;
    }
    while (!done_ && !agenda_.empty()) {
      EdgeId id = pop();
      process(id);
    }
    auto t1 = std::chrono::steady_clock::now();
    result_.stats.elapsed_s = std::chrono::duration<double>(t1 - t0).count();

    std::set<std::string> strings;
    for (EdgeId goal : goals_) {
      Derivation d{spell(result_, bag_, goal), bracket(result_, bag_, goal),
                   goal};
      strings.insert(d.words);
      result_.derivations.push_back(std::move(d));
    }
    result_.strings.assign(strings.begin(), strings.end());
    return std::move(result_);
  }

 private:
  EdgeId pop() {
    EdgeId id = 0;
    switch (opts_.order) {
      case AgendaOrder::kFifo:
        id = agenda_.front();
        agenda_.pop_front();
        break;
      case AgendaOrder::kLifo:
        id = agenda_.back();
        agenda_.pop_back();
        break;
      case AgendaOrder::kRandom: {
        std::uniform_int_distribution<size_t> pick(0, agenda_.size() - 1);
        size_t k = pick(rng_);
        id = agenda_[k];
        agenda_[k] = agenda_.back();
        agenda_.pop_back();
        break;
      }
    }
    return id;
  }

  bool tag_connected(LeafSet leaves) const {
    uint64_t want = leaves.bits();
    uint64_t reached = want & -want;
    uint64_t frontier = reached;
    while (frontier) {
      size_t i = static_cast<size_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      uint64_t next = tag_adj_[i] & want & ~reached;
      reached |= next;
      frontier |= next;
    }
    return reached == want;
  }

  void admit(Edge e) {
    std::pair<int, std::vector<EdgeId>> key{e.rule, e.children};
    if (e.lexical()) key.second = {static_cast<EdgeId>(seen_lexical_++)};
    if (!seen_.insert(std::move(key)).second) return;

    if (e.inactive()) {
      if (opts_.check_connected && !tag_connected(e.leaves)) {
        throw InvariantViolation("inactive edge covers a disconnected part "
                                 "of the bag: " + to_avm(e.sign));
      }
      if (prune_) {
        bool ok = prune_->test_wfss(e.sign, e.leaves);
        if (opts_.trace) {
          *opts_.trace << "TEST "
                       << restrict(e.sign, g_.restrictor()).str()
                       << " leaves=" << e.leaves.str(bag_.size()) << " -> "
                       << (ok ? "accept" : "reject") << '\n';
        }
        if (!ok) {
          ++result_.stats.pruned;
          return;
        }
      }
    }
    if (opts_.max_edges && result_.edges.size() >= opts_.max_edges) {
      throw GenerationError("edge limit of " +
                            std::to_string(opts_.max_edges) + " exceeded");
    }
    e.id = static_cast<EdgeId>(result_.edges.size());
    ++result_.stats.edges_total;
    if (e.inactive()) ++result_.stats.edges_inactive;
    bool goal = e.inactive() && e.leaves == full_ &&
                unify(e.sign, start_).has_value();
    agenda_.push_back(e.id);
    result_.edges.push_back(std::move(e));
    if (goal) {
      goals_.push_back(result_.edges.back().id);
      if (!opts_.all_solutions) done_ = true;
    }
  }

  void process(EdgeId id) {
    // Copies: admit() may grow the edge vector.
    const Edge e = result_.edges[id];
    Symbol cat = e.category();
    if (e.inactive()) {
      const std::vector<EdgeId> actives = actives_[cat];
      for (EdgeId a : actives) {
        if (!result_.edges[a].leaves.disjoint(e.leaves)) continue;
        if (auto n = combine_edges(g_, result_.edges[a], e)) {
          admit(std::move(*n));
          if (done_) return;
        }
      }
      if (auto it = by_first_.find(cat); it != by_first_.end()) {
        for (size_t r : it->second) {
          if (auto n = start_rule(g_, r, e)) {
            admit(std::move(*n));
            if (done_) return;
          }
        }
      }
      inactives_[cat].push_back(id);
    } else {
      const std::vector<EdgeId> inactives = inactives_[cat];
      for (EdgeId i : inactives) {
        if (!result_.edges[i].leaves.disjoint(e.leaves)) continue;
        if (auto n = combine_edges(g_, e, result_.edges[i])) {
          admit(std::move(*n));
          if (done_) return;
        }
      }
      actives_[cat].push_back(id);
    }
  }

  const Grammar &g_;
  const Bag &bag_;
  const GenOptions &opts_;
  std::mt19937_64 rng_;
  LeafSet full_;
  FeatureStructure start_;
  std::optional<PruneContext> prune_;
  std::vector<uint64_t> tag_adj_;
  std::unordered_map<Symbol, std::vector<size_t>> by_first_;
  std::unordered_map<Symbol, std::vector<EdgeId>> actives_;
  std::unordered_map<Symbol, std::vector<EdgeId>> inactives_;
  std::set<std::pair<int, std::vector<EdgeId>>> seen_;
  size_t seen_lexical_ = 0;
  std::deque<EdgeId> agenda_;
  std::vector<EdgeId> goals_;
  GenResult result_;
  bool done_ = false;
};

}  // namespace

GenResult generate(const Grammar &g, const Bag &bag, const DomainSet *outer,
                   const GenOptions &opts) {
  if (bag.empty()) throw GenerationError("empty bag");
  if (bag.size() > LeafSet::kMaxPositions) {
    throw GenerationError("bags are limited to 64 elements");
  }
  if (!bag_connected(bag)) {
    auto comps = bag_components(bag);
    throw GenerationError("bag is not connected (" +
                          std::to_string(comps.size()) + " components): " +
                          describe_components(bag, comps));
  }
  return Generator(g, bag, outer, opts).run();
}

}  // namespace bagforge
