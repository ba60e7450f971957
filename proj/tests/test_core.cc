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

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "bagforge/avm_text.h"
#include "bagforge/errors.h"
#include "bagforge/feature_structure.h"
#include "bagforge/restrictor.h"
#include "test_util.h"

namespace bagforge {
namespace {

FeatureStructure fs(std::string_view text) { return parse_sign(text); }

TEST_CASE("unify with itself is isomorphic") {
  auto f = fs("NP[sem=#0, sem.arg1=@1, agr=#0]");
  auto u = unify(f, f);
  REQUIRE(u);
  CHECK(isomorphic(*u, f));
}

TEST_CASE("distinct index tags clash, equal tags unify") {
  CHECK_FALSE(unify(FeatureStructure::index(Symbol("1")),
                    FeatureStructure::index(Symbol("2"))));
  CHECK(unify(FeatureStructure::index(Symbol("1")),
              FeatureStructure::index(Symbol("1"))));
  CHECK_FALSE(unify(fs("N[sem.arg1=@1]"), fs("N[sem.arg1=@2]")));
}

TEST_CASE("lexical dog unifies with the N daughter of rule 5") {
  const Production &r5 = testing::simple().productions()[4];
  REQUIRE(r5.name == "r5");
  auto dog = fs("N[sem.reln=dog, sem.arg1=@1]");
  auto u = unify_at(r5.rule, r5.daughter_nodes[0], dog);
  REQUIRE(u);
  auto d0 = u->child(u->root(), daughter_label(0));
  auto reln = u->resolve(*d0, Path::parse("sem.reln"));
  REQUIRE(reln);
  CHECK(u->value(*reln).str() == "dog");
  // Rule 5 shares sem with the mother.
  auto m = u->child(u->root(), mother_label());
  CHECK(u->resolve(*m, Path::parse("sem.reln")) == reln);
}

TEST_CASE("inputs are untouched by unification") {
  auto a = fs("X[f=#0, g=#0]");
  auto b = fs("X[f=p]");
  std::string before = to_avm(a);
  auto u = unify(a, b);
  REQUIRE(u);
  CHECK(to_avm(a) == before);
  CHECK(to_avm(*u) == "X[f=#0=p, g=#0=p]");
}

TEST_CASE("token identity") {
  const Production &r1 = testing::simple().productions()[0];
  CHECK(token_identical(r1.rule, Path::parse("m.sem"), Path::parse("d1.sem")));
  CHECK_FALSE(token_identical(r1.rule, Path::parse("m.sem"),
                              Path::parse("d0.sem")));
  auto two = fs("X[f=p, g=p]");
  CHECK_FALSE(token_identical(two, Path::parse("f"), Path::parse("g")));
  CHECK_FALSE(token_identical(r1.rule, Path::parse("m.sem.arg9"),
                              Path::parse("m.sem.arg9")));
}

TEST_CASE("cycles are rejected") {
  FsBuilder b;
  NodeId root = b.add_complex();
  auto inner = b.ensure_path(root, Path::parse("f"));
  REQUIRE(inner);
  CHECK(b.unify(root, *inner));
  CHECK_FALSE(b.build(root));
}

TEST_CASE("print form") {
  CHECK(to_avm(fs("NP[sem.arg1=@1, sem.reln=dog]")) ==
        "NP[sem.arg1=@1, sem.reln=dog]");
  CHECK(to_avm(fs("VP[sem=#0, x=#0]")) == "VP[sem=#0, x=#0]");
  CHECK(to_avm(fs("VP[sem=#0, x=#0, sem.a=@1, y=[]]")) ==
        "VP[sem.a=#0@1, x.a=#0@1, y=[]]");
}

// Random signs over paths that never prefix one another, so every text is
// well formed.
std::string random_sign(std::mt19937 &rng) {
  static const char *paths[] = {"f1", "f2", "g.h", "g.i"};
  static const char *values[] = {"p", "q", "@1", "@2", "#0", "#1", "_"};
  std::string out = "X[";
  bool first = true;
  for (const char *p : paths) {
    if (rng() % 3 == 0) continue;
    if (!first) out += ", ";
    first = false;
    out += std::string(p) + "=" + values[rng() % 7];
  }
  return out + "]";
}

std::optional<FeatureStructure> parse_or_none(const std::string &text) {
  try {
    return parse_sign(text);
  } catch (const std::invalid_argument &) {
    return std::nullopt;  // e.g. #0 bound to both p and q
  }
}

TEST_CASE("unification is commutative and associative up to isomorphism") {
  std::mt19937 rng(7);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto a = parse_or_none(random_sign(rng));
    auto b = parse_or_none(random_sign(rng));
    auto c = parse_or_none(random_sign(rng));
    if (!a || !b || !c) continue;
    auto ab = unify(*a, *b);
    auto ba = unify(*b, *a);
    REQUIRE(ab.has_value() == ba.has_value());
    if (ab) CHECK(isomorphic(*ab, *ba));

    std::optional<FeatureStructure> left, right;
    if (ab) left = unify(*ab, *c);
    if (auto bc = unify(*b, *c)) right = unify(*a, *bc);
    REQUIRE(left.has_value() == right.has_value());
    if (left) {
      CHECK(isomorphic(*left, *right));
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("unifier is subsumed by both inputs") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto a = parse_or_none(random_sign(rng));
    auto b = parse_or_none(random_sign(rng));
    if (!a || !b) continue;
    if (auto u = unify(*a, *b)) {
      CHECK(subsumes(*a, *u));
      CHECK(subsumes(*b, *u));
    }
  }
}

TEST_CASE("index tags in a bag unify exactly when equal") {
  const std::vector<std::string> tags = {"1", "2", "3", "e1"};
  for (const auto &s : tags) {
    for (const auto &t : tags) {
      bool ok = unify(FeatureStructure::index(Symbol(s)),
                      FeatureStructure::index(Symbol(t)))
                    .has_value();
      CHECK(ok == (s == t));
    }
  }
}

TEST_CASE("token identical paths need no further unification") {
  auto f = fs("X[f=#0, g=#0, h=@1]");
  REQUIRE(token_identical(f, Path::parse("f"), Path::parse("g")));
  auto at = f.resolve(Path::parse("f"));
  auto u = unify_at(f, *at, f.sub(*f.resolve(Path::parse("g"))));
  REQUIRE(u);
  CHECK(isomorphic(*u, f));
}

TEST_CASE("restrict projects onto the restrictor") {
  Restrictor r({Path::parse("cat"), Path::parse("sem.arg1")});
  auto np = fs("NP[sem.arg1=@1, sem.reln=dog]");
  CHECK(restrict(np, r).str() == "NP[sem.arg1=#0]");

  auto dog = fs("N[sem.reln=dog, sem.arg1=@1]");
  auto collar = fs("N[sem.reln=collar, sem.arg1=@2]");
  CHECK(restrict(dog, r) == restrict(collar, r));

  Restrictor cat_only;
  CHECK(restrict(dog, cat_only).str() == "N");
  CHECK(restrict(dog, cat_only).cells().empty());

  CHECK_THROWS_AS(restrict(fs("[sem.arg1=@1]"), r), InputError);
}

TEST_CASE("restrict ignores differences outside the restrictor") {
  Restrictor r({Path::parse("cat"), Path::parse("sem.arg1"),
                Path::parse("sem.arg2")});
  std::mt19937 rng(3);
  const char *atoms[] = {"dog", "cat", "bone"};
  for (int i = 0; i < 50; ++i) {
    std::string shared = "V[sem.arg1=#0, sem.arg2=#0, sem.reln=";
    auto a = fs(shared + atoms[rng() % 3] + ", agr=" + atoms[rng() % 3] + "]");
    auto b = fs(shared + atoms[rng() % 3] + "]");
    CHECK(restrict(a, r) == restrict(b, r));
    CHECK(restrict(a, r).str() == "V[sem.arg1=#0, sem.arg2=#0]");
  }
}

TEST_CASE("abstract sign reconstruction round-trips") {
  Restrictor r({Path::parse("cat"), Path::parse("sem.arg1"),
                Path::parse("sem.arg3")});
  auto p = fs("P[sem.arg1=#0, sem.arg3=#1, sem.reln=with]");
  AbstractSign a = restrict(p, r);
  CHECK(restrict(a.to_fs(), r) == a);
  CHECK(compatible(a, restrict(fs("P[sem.arg1=@1]"), r)));
  CHECK_FALSE(compatible(a, restrict(fs("N[sem.arg1=@1]"), r)));
}

}  // namespace
}  // namespace bagforge
