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

#ifndef BAGFORGE_DOMAINS_H_
#define BAGFORGE_DOMAINS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bagforge/feature_structure.h"
#include "bagforge/grammar.h"
#include "bagforge/restrictor.h"

namespace bagforge {

// <SignPath, LexPath>: Sign:SignPath is token identical with Lex:LexPath.
struct BindPair {
  Path sign_path;
  Path lex_path;

  std::string str() const { return sign_path.str() + "~" + lex_path.str(); }

  bool operator==(const BindPair &other) const = default;
  bool operator<(const BindPair &other) const {
    if (!(sign_path == other.sign_path)) return sign_path < other.sign_path;
    return lex_path < other.lex_path;
  }
};

using Binds = std::set<BindPair>;

std::string binds_str(const Binds &binds);

enum class DomainKind { kInner, kOuter };

std::string_view domain_kind_name(DomainKind kind);

struct DomainTriple {
  AbstractSign sign;
  AbstractSign lex;
  Binds binds;  // never empty
};

// An immutable set of (Sign, Lex, Binds) triples with merged binds per
// (Sign, Lex) pair, indexed by sign category for lookup.
class DomainSet {
 public:
  using Table = std::map<AbstractSign, std::map<AbstractSign, Binds>>;

  DomainSet(DomainKind kind, Restrictor restrictor, Table table);

  DomainKind kind() const { return kind_; }
  const Restrictor &restrictor() const { return restrictor_; }
  const Table &table() const { return table_; }

  // Merged triples in (sign, lex) text order.
  std::vector<DomainTriple> triples() const;
  std::vector<DomainTriple> triples_for(std::string_view category) const;
  size_t size() const;
  bool empty() const { return size() == 0; }

  // Union of the binds of every triple whose sign and lex are compatible
  // with the given abstractions.
  Binds matching_binds(const AbstractSign &sign, const AbstractSign &lex) const;

  bool operator==(const DomainSet &other) const {
    return kind_ == other.kind_ && table_ == other.table_;
  }

 private:
  struct LexRow {
    AbstractSign lex;
    FeatureStructure lex_fs;
    Binds binds;
  };
  struct SignRow {
    AbstractSign sign;
    FeatureStructure sign_fs;
    std::vector<LexRow> lexes;
  };

  DomainKind kind_;
  Restrictor restrictor_;
  Table table_;
  std::map<Symbol, std::vector<SignRow>> by_category_;
};

// Per-sweep record of a fixed-point computation.
struct CompileSnapshot {
  size_t sweep = 0;
  // popcount of binds per (sign, lex) pair, by text key "sign :: lex".
  std::map<std::string, size_t> binds_sizes;
};

struct CompileLog {
  std::vector<CompileSnapshot> snapshots;

  size_t sweeps() const { return snapshots.size(); }
  // No pair disappears and no binds set shrinks between consecutive sweeps.
  bool monotone() const;
};

// Least fixed point of the inner-domain equations: every preterminal holds
// itself with identity binds over the param paths its lexical entries carry;
// a mother absorbs the inner domains of whatever can fill each daughter,
// with binds composed through the rule's token identities.
DomainSet compute_inner(const Grammar &g, CompileLog *log = nullptr);

// Least fixed point of the outer-domain equations: a daughter absorbs the
// inner domains of its sisters and the outer domain of its mother, each
// composed through the rule's token identities. Triples with empty binds are
// never stored. Keyed by daughter-slot abstractions.
DomainSet compute_outer(const Grammar &g, const DomainSet &inner,
                        CompileLog *log = nullptr);

// Bind pairs witnessing that lexical sign `lex` lies in the outer domain of
// `sign`: pairs from triples matching both signs whose two path values exist
// and unify on the concrete signs. Empty means "not in the outer domain".
Binds lex_in_outer(const DomainSet &outer, const FeatureStructure &sign,
                   const FeatureStructure &lex);

// Same, with the sign already abstracted (lets callers hoist restrict()).
Binds lex_in_outer(const DomainSet &outer, const AbstractSign &sign_abs,
                   const FeatureStructure &sign, const AbstractSign &lex_abs,
                   const FeatureStructure &lex);

// Text lines `kind Sign :: Lex :: p~q, p~q`, sorted. With `expand`, one line
// per bind pair. `category` filters on the sign category.
std::vector<std::string> domain_lines(
    const DomainSet &d, bool expand,
    std::optional<std::string_view> category = std::nullopt);

}  // namespace bagforge

#endif  // BAGFORGE_DOMAINS_H_
