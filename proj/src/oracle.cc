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

#include "bagforge/oracle.h"

#include <algorithm>
#include <map>
#include <memory>

#include "bagforge/errors.h"

namespace bagforge {

namespace {

// Ordered chart parser over a growing prefix. Items ending at column k are
// stored contiguously, so a column can be appended and dropped again while
// the permutation search backtracks.
class OrderedParser {
 public:
  explicit OrderedParser(const Grammar &g) : g_(g) { column_begin_.push_back(0); }

  void push(const BagElement &e) {
    const size_t end = column_begin_.size();  // new column index
    column_begin_.push_back(items_.size());
    for (const FeatureStructure &s : e.signs) {
      items_.push_back({end - 1, -1, 0, 0, s});
    }
    for (size_t x = column_begin_[end]; x < items_.size(); ++x) {
      if (items_.size() > kItemLimit) {
        throw GenerationError("permutation oracle: item limit exceeded");
      }
      if (!complete(items_[x])) continue;
      const size_t start = items_[x].start;
      const Symbol cat = items_[x].fs.category();
      // Actives ending where this item starts.
      if (start > 0) {
        for (size_t y = column_begin_[start]; y < column_begin_[start + 1];
             ++y) {
          if (complete(items_[y])) continue;
          const Production &p = g_.productions()[items_[y].rule];
          if (p.daughter_categories[items_[y].dot] != cat) continue;
          advance(items_[y], items_[x]);
        }
      }
      for (size_t r = 0; r < g_.productions().size(); ++r) {
        const Production &p = g_.productions()[r];
        if (p.daughter_categories[0] != cat) continue;
        Item fresh{start, static_cast<int>(r), 0, p.arity(), p.rule};
        advance(fresh, items_[x]);
      }
    }
  }

  void pop() {
    items_.resize(column_begin_.back());
    column_begin_.pop_back();
  }

  bool accepts(const FeatureStructure &start) const {
    for (size_t x = column_begin_.back(); x < items_.size(); ++x) {
      const Item &it = items_[x];
      if (it.start == 0 && complete(it) && unify(it.fs, start)) return true;
    }
    return false;
  }

 private:
  static constexpr size_t kItemLimit = 2'000'000;

  struct Item {
    size_t start;
    int rule;  // -1 for lexical items
    size_t dot;
    size_t arity;
    FeatureStructure fs;  // rule instance while incomplete, else the sign
  };

  static bool complete(const Item &it) { return it.dot == it.arity; }

  // Appends the item obtained by moving the dot of `active` over `done`.
  void advance(const Item &active, const Item &done) {
    const FeatureStructure &inst = active.fs;
    NodeId slot = *inst.child(inst.root(), daughter_label(active.dot));
    auto merged = unify_at(inst, slot, done.fs);
    if (!merged) return;
    Item next{active.start, active.rule, active.dot + 1, active.arity,
              FeatureStructure()};
    if (complete(next)) {
      next.fs = merged->sub(*merged->child(merged->root(), mother_label()));
    } else {
      next.fs = std::move(*merged);
    }
    items_.push_back(std::move(next));
  }

  const Grammar &g_;
  std::vector<Item> items_;
  std::vector<size_t> column_begin_;
};

struct PermutationSearch {
  const Bag &bag;
  const FeatureStructure &start;
  OrderedParser parser;
  // Elements with equal word and assignments are interchangeable; only one
  // representative per class is tried at each step.
  std::vector<std::vector<size_t>> classes;
  std::vector<size_t> used;
  std::vector<std::string> words;
  std::set<std::string> out;

  void run(size_t depth) {
    if (depth == bag.size()) {
      if (parser.accepts(start)) {
        std::string s;
        for (const auto &w : words) s += (s.empty() ? "" : " ") + w;
        out.insert(std::move(s));
      }
      return;
    }
    for (size_t c = 0; c < classes.size(); ++c) {
      if (used[c] == classes[c].size()) continue;
      const BagElement &e = bag[classes[c][used[c]]];
      ++used[c];
      words.push_back(e.word);
      parser.push(e);
      run(depth + 1);
      parser.pop();
      words.pop_back();
      --used[c];
    }
  }
};

}  // namespace

std::set<std::string> permutation_oracle(const Grammar &g, const Bag &bag,
                                         const FeatureStructure &start) {
  if (bag.size() > kMaxOracleBag) {
    throw GenerationError("permutation oracle is limited to bags of " +
                          std::to_string(kMaxOracleBag) + " elements");
  }
  if (bag.empty()) return {};
  PermutationSearch search{bag, start, OrderedParser(g), {}, {}, {}, {}};
  std::map<std::pair<std::string, std::vector<std::string>>, size_t> key_class;
  for (size_t i = 0; i < bag.size(); ++i) {
    std::vector<std::string> key;
    for (const auto &a : bag[i].assignments) {
      key.push_back((a.path ? a.path->str() : "") + "=" +
                    std::string(a.tag.str()));
    }
    auto [it, fresh] =
        key_class.try_emplace({bag[i].word, key}, search.classes.size());
    if (fresh) search.classes.emplace_back();
    search.classes[it->second].push_back(i);
  }
  search.used.assign(search.classes.size(), 0);
  search.run(0);
  return std::move(search.out);
}

namespace {

// A partial derivation tree: rule < 0 marks a leaf.
struct Shape {
  int rule = -1;
  std::vector<std::shared_ptr<const Shape>> kids;
};
using ShapePtr = std::shared_ptr<const Shape>;

class ShapeEnumerator {
 public:
  explicit ShapeEnumerator(const Grammar &g) : g_(g) {}

  const std::vector<ShapePtr> &shapes(Symbol cat, size_t depth) {
    auto key = std::make_pair(cat, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<ShapePtr> out{std::make_shared<Shape>()};
    if (depth > 0) {
      for (size_t r = 0; r < g_.productions().size(); ++r) {
        const Production &p = g_.productions()[r];
        if (p.mother_category != cat) continue;
        std::vector<std::vector<ShapePtr>> options;
        for (Symbol d : p.daughter_categories) {
          options.push_back(shapes(d, depth - 1));
        }
        std::vector<size_t> pick(options.size(), 0);
        while (true) {
          auto s = std::make_shared<Shape>();
          s->rule = static_cast<int>(r);
          for (size_t i = 0; i < pick.size(); ++i) {
            s->kids.push_back(options[i][pick[i]]);
          }
          out.push_back(std::move(s));
          size_t i = 0;
          while (i < pick.size() && ++pick[i] == options[i].size()) {
            pick[i++] = 0;
          }
          if (i == pick.size()) break;
        }
      }
    }
    return memo_[key] = std::move(out);
  }

 private:
  const Grammar &g_;
  std::map<std::pair<Symbol, size_t>, std::vector<ShapePtr>> memo_;
};

struct TreeNode {
  NodeId arena;
  size_t end;  // one past the last preorder index of the subtree
  bool lexical;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(const Grammar &g) : g_(g) {}

  // Candidate entries per lexical leaf, in preorder; set before build().
  std::vector<std::vector<FeatureStructure>> leaf_entries;

  // Instantiates the shape; `choice[k]` selects the lexical entry for the
  // k-th lexical leaf. Returns the tree structure with arcs n0, n1, ... to
  // the nodes in preorder.
  std::optional<FeatureStructure> build(const Shape &root,
                                        const std::vector<size_t> &choice) {
    b_ = FsBuilder();
    nodes_.clear();
    choice_ = &choice;
    next_leaf_ = 0;
    NodeId sign = b_.import(g_.start());
    if (!place(root, sign, false)) return std::nullopt;
    NodeId top = b_.add_complex();
    for (size_t i = 0; i < nodes_.size(); ++i) {
      auto slot = b_.ensure_path(top, Path({Symbol("n" + std::to_string(i))}));
      if (!slot || !b_.unify(*slot, nodes_[i].arena)) return std::nullopt;
    }
    return b_.build(top);
  }

  // Lexical leaf categories of a shape, in preorder.
  void lexical_leaves(const Shape &s, bool preterminal,
                      Symbol cat, std::vector<Symbol> &out) const {
    if (s.rule < 0) {
      if (preterminal) out.push_back(cat);
      return;
    }
    const Production &p = g_.productions()[s.rule];
    for (size_t i = 0; i < s.kids.size(); ++i) {
      lexical_leaves(*s.kids[i], g_.is_preterminal(s.rule, i),
                     p.daughter_categories[i], out);
    }
  }

  const std::vector<TreeNode> &nodes() const { return nodes_; }

 private:
  bool place(const Shape &s, NodeId sign, bool preterminal) {
    const size_t idx = nodes_.size();
    nodes_.push_back({sign, 0, false});
    if (s.rule >= 0) {
      const Production &p = g_.productions()[s.rule];
      std::vector<NodeId> map;
      b_.import(p.rule, &map);
      if (!b_.unify(sign, map[p.mother_node])) return false;
      for (size_t i = 0; i < s.kids.size(); ++i) {
        if (!place(*s.kids[i], map[p.daughter_nodes[i]],
                   g_.is_preterminal(s.rule, i))) {
          return false;
        }
      }
    } else if (preterminal) {
      nodes_[idx].lexical = true;
      size_t k = next_leaf_++;
      const FeatureStructure &entry = leaf_entries[k][(*choice_)[k]];
      if (!b_.unify(sign, b_.import(entry))) return false;
    }
    nodes_[idx].end = nodes_.size();
    return true;
  }

  const Grammar &g_;
  FsBuilder b_;
  std::vector<TreeNode> nodes_;
  const std::vector<size_t> *choice_ = nullptr;
  size_t next_leaf_ = 0;
};

}  // namespace

DomainSet derivation_oracle(const Grammar &g, size_t depth) {
  if (depth > kMaxOracleDepth) {
    throw GenerationError("derivation oracle is limited to depth " +
                          std::to_string(kMaxOracleDepth));
  }
  const Restrictor &r = g.restrictor();
  // One representative entry per distinct abstraction and category.
  std::map<Symbol, std::vector<FeatureStructure>> lex;
  {
    std::set<std::string> seen;
    for (const auto &[word, entries] : g.lexicon()) {
      for (const LexicalEntry &e : entries) {
        if (seen.insert(restrict(e.sign, r).str()).second) {
          lex[e.sign.category()].push_back(e.sign);
        }
      }
    }
  }

  DomainSet::Table table;
  ShapeEnumerator shapes(g);
  TreeBuilder builder(g);
  const auto &params = g.param_paths();
  for (const ShapePtr &shape : shapes.shapes(g.start().category(), depth)) {
    std::vector<Symbol> leaf_cats;
    builder.lexical_leaves(*shape, false, g.start().category(), leaf_cats);
    builder.leaf_entries.clear();
    bool possible = true;
    for (Symbol c : leaf_cats) {
      auto it = lex.find(c);
      if (it == lex.end()) {
        possible = false;
        break;
      }
      builder.leaf_entries.push_back(it->second);
    }
    if (!possible) continue;
    std::vector<size_t> choice(leaf_cats.size(), 0);
    while (true) {
      if (auto tree = builder.build(*shape, choice)) {
        const auto &nodes = builder.nodes();
        std::vector<NodeId> at(nodes.size());
        for (size_t i = 0; i < nodes.size(); ++i) {
          at[i] = *tree->child(tree->root(),
                               Symbol("n" + std::to_string(i)));
        }
        for (size_t s = 0; s < nodes.size(); ++s) {
          for (size_t l = 0; l < nodes.size(); ++l) {
            if (!nodes[l].lexical || (l >= s && l < nodes[s].end)) continue;
            Binds binds;
            for (const Path &p : params) {
              auto ps = tree->resolve(at[s], p);
              if (!ps) continue;
              for (const Path &q : params) {
                auto ql = tree->resolve(at[l], q);
                if (ql && *ql == *ps) binds.insert({p, q});
              }
            }
            if (binds.empty()) continue;
            auto &cell = table[restrict(tree->sub(at[s]), r)]
                              [restrict(tree->sub(at[l]), r)];
            cell.insert(binds.begin(), binds.end());
          }
        }
      }
      size_t i = 0;
      while (i < choice.size() &&
             ++choice[i] == builder.leaf_entries[i].size()) {
        choice[i++] = 0;
      }
      if (i == choice.size()) break;
    }
  }
  return DomainSet(DomainKind::kOuter, r, std::move(table));
}

std::vector<std::string> uncovered_triples(const DomainSet &outer,
                                           const DomainSet &oracle) {
  std::vector<std::string> out;
  for (const DomainTriple &t : oracle.triples()) {
    Binds got = lex_in_outer(outer, t.sign.to_fs(), t.lex.to_fs());
    Binds missing;
    std::set_difference(t.binds.begin(), t.binds.end(), got.begin(),
                        got.end(), std::inserter(missing, missing.end()));
    if (!missing.empty()) {
      out.push_back(t.sign.str() + " :: " + t.lex.str() + " :: missing " +
                    binds_str(missing));
    }
  }
  return out;
}

}  // namespace bagforge
