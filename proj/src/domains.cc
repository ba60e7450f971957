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

#include "bagforge/domains.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

#include "bagforge/errors.h"

namespace bagforge {

std::string binds_str(const Binds &binds) {
  std::string out;
  for (const BindPair &b : binds) {
    if (!out.empty()) out += ", ";
    out += b.str();
  }
  return out;
}

std::string_view domain_kind_name(DomainKind kind) {
  return kind == DomainKind::kInner ? "inner" : "outer";
}

DomainSet::DomainSet(DomainKind kind, Restrictor restrictor, Table table)
    : kind_(kind), restrictor_(std::move(restrictor)), table_(std::move(table)) {
  for (auto it = table_.begin(); it != table_.end();) {
    auto &lexes = it->second;
    for (auto jt = lexes.begin(); jt != lexes.end();) {
      jt = jt->second.empty() ? lexes.erase(jt) : std::next(jt);
    }
    it = lexes.empty() ? table_.erase(it) : std::next(it);
  }
  for (const auto &[sign, lexes] : table_) {
    SignRow row{sign, sign.to_fs(), {}};
    for (const auto &[lex, binds] : lexes) {
      row.lexes.push_back(LexRow{lex, lex.to_fs(), binds});
    }
    by_category_[sign.category()].push_back(std::move(row));
  }
}

std::vector<DomainTriple> DomainSet::triples() const {
  std::vector<DomainTriple> out;
  for (const auto &[sign, lexes] : table_) {
    for (const auto &[lex, binds] : lexes) out.push_back({sign, lex, binds});
  }
  return out;
}

std::vector<DomainTriple> DomainSet::triples_for(
    std::string_view category) const {
  std::vector<DomainTriple> out;
  for (DomainTriple &t : triples()) {
    if (t.sign.category().str() == category) out.push_back(std::move(t));
  }
  return out;
}

size_t DomainSet::size() const {
  size_t n = 0;
  for (const auto &[sign, lexes] : table_) n += lexes.size();
  return n;
}

Binds DomainSet::matching_binds(const AbstractSign &sign,
                                const AbstractSign &lex) const {
  Binds out;
  auto it = by_category_.find(sign.category());
  if (it == by_category_.end()) return out;
  FeatureStructure sign_fs = sign.to_fs();
  FeatureStructure lex_fs = lex.to_fs();
  for (const SignRow &row : it->second) {
    if (!unify(row.sign_fs, sign_fs)) continue;
    for (const LexRow &lr : row.lexes) {
      if (lr.lex.category() != lex.category()) continue;
      if (!unify(lr.lex_fs, lex_fs)) continue;
      out.insert(lr.binds.begin(), lr.binds.end());
    }
  }
  return out;
}

bool CompileLog::monotone() const {
  for (size_t i = 1; i < snapshots.size(); ++i) {
    const auto &prev = snapshots[i - 1].binds_sizes;
    const auto &cur = snapshots[i].binds_sizes;
    for (const auto &[key, size] : prev) {
      auto it = cur.find(key);
      if (it == cur.end() || it->second < size) return false;
    }
  }
  return true;
}

namespace {

// Binds are kept as k*k bit matrices over param-path indices during the
// fixed point: bit (a*k + b) set means <param[a], param[b]>.
using Mask = uint64_t;
constexpr size_t kMaxParams = 8;

Mask compose(const Mask share, const Mask binds, size_t k) {
  // result[a][c] = OR_b share[a][b] & binds[b][c]
  Mask out = 0;
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = 0; b < k; ++b) {
      if (!(share >> (a * k + b) & 1)) continue;
      Mask row = (binds >> (b * k)) & ((Mask{1} << k) - 1);
      out |= row << (a * k);
    }
  }
  return out;
}

// Abstract signs of the grammar's rule slots, interned to small ids, plus
// the per-rule token-identity matrices between slots.
class SlotModel {
 public:
  explicit SlotModel(const Grammar &g) : g_(g), k_(g.param_paths().size()) {
    if (k_ > kMaxParams) {
      throw InputError("at most 8 connectivity parameter paths are supported");
    }
    const auto &prods = g.productions();
    for (size_t p = 0; p < prods.size(); ++p) {
      const Production &prod = prods[p];
      mother_.push_back(intern(restrict(prod.mother(), g.restrictor())));
      std::vector<int> ds;
      std::vector<Mask> lexmask;
      for (size_t i = 0; i < prod.arity(); ++i) {
        FeatureStructure d = prod.daughter(i);
        ds.push_back(intern(restrict(d, g.restrictor())));
        lexmask.push_back(g.is_preterminal(p, i) ? lexical_paths(d) : 0);
      }
      daughters_.push_back(std::move(ds));
      lex_paths_.push_back(std::move(lexmask));
    }
    for (size_t p = 0; p < prods.size(); ++p) {
      if (std::find(mothers_.begin(), mothers_.end(), mother_[p]) ==
          mothers_.end()) {
        mothers_.push_back(mother_[p]);
      }
      for (int d : daughters_[p]) {
        if (std::find(daughter_ids_.begin(), daughter_ids_.end(), d) ==
            daughter_ids_.end()) {
          daughter_ids_.push_back(d);
        }
      }
    }
  }

  size_t k() const { return k_; }
  size_t sign_count() const { return signs_.size(); }
  const AbstractSign &sign(int id) const { return signs_[id]; }
  int mother(size_t p) const { return mother_[p]; }
  int daughter(size_t p, size_t i) const { return daughters_[p][i]; }
  const std::vector<int> &mothers() const { return mothers_; }
  const std::vector<int> &daughter_ids() const { return daughter_ids_; }
  // Param paths carried by lexical entries fitting a preterminal slot; 0 for
  // slots that are not preterminal. Diagonal bit mask.
  Mask lex_diag(size_t p, size_t i) const { return lex_paths_[p][i]; }

  bool compatible(int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = compat_.find(key);
    if (it != compat_.end()) return it->second;
    bool ok = bagforge::compatible(signs_[a], signs_[b]);
    compat_.emplace(key, ok);
    return ok;
  }

  // share[a][b]: slot x's param a is token identical with slot y's param b
  // in every extension of the rule. Slot -1 is the mother.
  Mask share(size_t p, int x, int y) const {
    const Production &prod = g_.productions()[p];
    NodeId nx = x < 0 ? prod.mother_node : prod.daughter_nodes[x];
    NodeId ny = y < 0 ? prod.mother_node : prod.daughter_nodes[y];
    const auto &params = g_.param_paths();
    Mask m = 0;
    for (size_t a = 0; a < k_; ++a) {
      for (size_t b = 0; b < k_; ++b) {
        if (shared_under_extension(prod.rule, nx, params[a], ny, params[b])) {
          m |= Mask{1} << (a * k_ + b);
        }
      }
    }
    return m;
  }

  Binds to_binds(Mask m) const {
    Binds out;
    const auto &params = g_.param_paths();
    for (size_t a = 0; a < k_; ++a) {
      for (size_t b = 0; b < k_; ++b) {
        if (m >> (a * k_ + b) & 1) out.insert({params[a], params[b]});
      }
    }
    return out;
  }

 private:
  int intern(const AbstractSign &s) {
    auto it = ids_.find(s.str());
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(signs_.size());
    signs_.push_back(s);
    ids_.emplace(s.str(), id);
    return id;
  }

  Mask lexical_paths(const FeatureStructure &slot) const {
    Mask m = 0;
    for (const auto &[word, entries] : g_.lexicon()) {
      for (const LexicalEntry &e : entries) {
        if (e.sign.category() != slot.category()) continue;
        auto u = unify(slot, e.sign);
        if (!u) continue;
        for (size_t a = 0; a < k_; ++a) {
          if (u->resolve(g_.param_paths()[a])) m |= Mask{1} << (a * k_ + a);
        }
      }
    }
    return m;
  }

  const Grammar &g_;
  size_t k_;
  std::vector<AbstractSign> signs_;
  std::unordered_map<std::string, int> ids_;
  std::vector<int> mother_;
  std::vector<std::vector<int>> daughters_;
  std::vector<std::vector<Mask>> lex_paths_;
  std::vector<int> mothers_;
  std::vector<int> daughter_ids_;
  std::map<std::pair<int, int>, bool> compat_;
};

// sign id -> lex id -> binds
using WorkTable = std::vector<std::map<int, Mask>>;

bool absorb(std::map<int, Mask> &into, int lex, Mask binds) {
  if (binds == 0) return false;
  Mask &slot = into[lex];
  Mask merged = slot | binds;
  if (merged == slot) return false;
  slot = merged;
  return true;
}

void snapshot(const SlotModel &model, const WorkTable &t, size_t sweep,
              CompileLog *log) {
  if (log == nullptr) return;
  CompileSnapshot s;
  s.sweep = sweep;
  for (size_t sign = 0; sign < t.size(); ++sign) {
    for (const auto &[lex, m] : t[sign]) {
      s.binds_sizes[model.sign(static_cast<int>(sign)).str() + " :: " +
                    model.sign(lex).str()] =
          static_cast<size_t>(std::popcount(m));
    }
  }
  log->snapshots.push_back(std::move(s));
}

DomainSet::Table to_table(const SlotModel &model, const WorkTable &t) {
  DomainSet::Table table;
  for (size_t sign = 0; sign < t.size(); ++sign) {
    for (const auto &[lex, m] : t[sign]) {
      if (m == 0) continue;
      table[model.sign(static_cast<int>(sign))][model.sign(lex)] =
          model.to_binds(m);
    }
  }
  return table;
}

// Inner-domain rows that can fill daughter i of production p: those of
// every compatible mother, plus the slot's own base row when preterminal.
struct InnerSolver {
  SlotModel &model;
  const Grammar &g;
  WorkTable inner;
  std::vector<std::vector<std::vector<int>>> fillers;  // [p][i] -> key ids

  InnerSolver(SlotModel &m, const Grammar &grammar) : model(m), g(grammar) {
    const auto &prods = g.productions();
    fillers.resize(prods.size());
    for (size_t p = 0; p < prods.size(); ++p) {
      for (size_t i = 0; i < prods[p].arity(); ++i) {
        std::vector<int> keys;
        int d = model.daughter(p, i);
        for (int mother : model.mothers()) {
          if (model.compatible(mother, d)) keys.push_back(mother);
        }
        if (g.is_preterminal(p, i) &&
            std::find(keys.begin(), keys.end(), d) == keys.end()) {
          keys.push_back(d);
        }
        fillers[p].push_back(std::move(keys));
      }
    }
  }

  void solve(CompileLog *log) {
    inner.assign(model.sign_count(), {});
    const auto &prods = g.productions();
    for (size_t p = 0; p < prods.size(); ++p) {
      for (size_t i = 0; i < prods[p].arity(); ++i) {
        Mask diag = model.lex_diag(p, i);
        int d = model.daughter(p, i);
        if (diag != 0) absorb(inner[d], d, diag);
      }
    }
    std::vector<std::vector<Mask>> share(prods.size());
    for (size_t p = 0; p < prods.size(); ++p) {
      for (size_t i = 0; i < prods[p].arity(); ++i) {
        share[p].push_back(model.share(p, -1, static_cast<int>(i)));
      }
    }
    size_t sweep = 0;
    snapshot(model, inner, sweep, log);
    bool changed = true;
    while (changed) {
      changed = false;
      ++sweep;
      for (size_t p = 0; p < prods.size(); ++p) {
        int m = model.mother(p);
        for (size_t i = 0; i < prods[p].arity(); ++i) {
          for (int key : fillers[p][i]) {
            // Copy: absorbing into inner[m] may alias inner[key].
            auto rows = inner[key];
            for (const auto &[lex, binds] : rows) {
              changed |= absorb(inner[m], lex,
                                compose(share[p][i], binds, model.k()));
            }
          }
        }
      }
      snapshot(model, inner, sweep, log);
    }
  }
};

}  // namespace

DomainSet compute_inner(const Grammar &g, CompileLog *log) {
  SlotModel model(g);
  InnerSolver solver(model, g);
  solver.solve(log);
  return DomainSet(DomainKind::kInner, g.restrictor(),
                   to_table(model, solver.inner));
}

DomainSet compute_outer(const Grammar &g, const DomainSet &inner,
                        CompileLog *log) {
  SlotModel model(g);
  // Re-derive the inner work table in slot-id space; the passed set must be
  // the inner domain of the same grammar.
  InnerSolver solver(model, g);
  solver.solve(nullptr);
  if (!(to_table(model, solver.inner) == inner.table())) {
    throw InvariantViolation("compute_outer: inner domain does not match "
                             "the grammar");
  }
  const auto &prods = g.productions();
  const size_t k = model.k();

  // Daughter slots that a constituent with mother p can occupy.
  std::vector<std::vector<int>> mother_slots(prods.size());
  for (size_t p = 0; p < prods.size(); ++p) {
    for (int d : model.daughter_ids()) {
      if (model.compatible(model.mother(p), d)) mother_slots[p].push_back(d);
    }
  }
  struct RuleShares {
    std::vector<std::vector<Mask>> sister;  // [i][j]
    std::vector<Mask> to_mother;            // [i]
  };
  std::vector<RuleShares> shares(prods.size());
  for (size_t p = 0; p < prods.size(); ++p) {
    size_t n = prods[p].arity();
    shares[p].sister.assign(n, std::vector<Mask>(n, 0));
    for (size_t i = 0; i < n; ++i) {
      shares[p].to_mother.push_back(model.share(p, static_cast<int>(i), -1));
      for (size_t j = 0; j < n; ++j) {
        if (i != j) {
          shares[p].sister[i][j] =
              model.share(p, static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
  }

  WorkTable outer(model.sign_count());
  size_t sweep = 0;
  snapshot(model, outer, sweep, log);
  bool changed = true;
  while (changed) {
    changed = false;
    ++sweep;
    for (size_t p = 0; p < prods.size(); ++p) {
      size_t n = prods[p].arity();
      for (size_t i = 0; i < n; ++i) {
        int d = model.daughter(p, i);
        for (size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          for (int key : solver.fillers[p][j]) {
            for (const auto &[lex, binds] : solver.inner[key]) {
              changed |= absorb(outer[d], lex,
                                compose(shares[p].sister[i][j], binds, k));
            }
          }
        }
        for (int slot : mother_slots[p]) {
          auto rows = outer[slot];
          for (const auto &[lex, binds] : rows) {
            changed |= absorb(outer[d], lex,
                              compose(shares[p].to_mother[i], binds, k));
          }
        }
      }
    }
    snapshot(model, outer, sweep, log);
  }
  return DomainSet(DomainKind::kOuter, g.restrictor(), to_table(model, outer));
}

namespace {

bool values_unify(const FeatureStructure &a, NodeId na,
                  const FeatureStructure &b, NodeId nb) {
  NodeKind ka = a.kind(na);
  NodeKind kb = b.kind(nb);
  if (ka == NodeKind::kVariable || kb == NodeKind::kVariable) return true;
  if (ka != kb) return false;
  if (ka != NodeKind::kComplex) return a.value(na) == b.value(nb);
  return unify(a.sub(na), b.sub(nb)).has_value();
}

}  // namespace

Binds lex_in_outer(const DomainSet &outer, const AbstractSign &sign_abs,
                   const FeatureStructure &sign, const AbstractSign &lex_abs,
                   const FeatureStructure &lex) {
  Binds out;
  for (const BindPair &b : outer.matching_binds(sign_abs, lex_abs)) {
    auto vs = sign.resolve(b.sign_path);
    auto vl = lex.resolve(b.lex_path);
    // An absent path never witnesses a connection.
    if (!vs || !vl) continue;
    if (values_unify(sign, *vs, lex, *vl)) out.insert(b);
  }
  return out;
}

Binds lex_in_outer(const DomainSet &outer, const FeatureStructure &sign,
                   const FeatureStructure &lex) {
  return lex_in_outer(outer, restrict(sign, outer.restrictor()), sign,
                      restrict(lex, outer.restrictor()), lex);
}

std::vector<std::string> domain_lines(const DomainSet &d, bool expand,
                                      std::optional<std::string_view> category) {
  std::vector<std::string> lines;
  std::string kind(domain_kind_name(d.kind()));
  for (const DomainTriple &t : d.triples()) {
    if (category && t.sign.category().str() != *category) continue;
    std::string head = kind + " " + t.sign.str() + " :: " + t.lex.str() + " :: ";
    if (expand) {
      for (const BindPair &b : t.binds) lines.push_back(head + b.str());
    } else {
      lines.push_back(head + binds_str(t.binds));
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace bagforge
