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

#include <algorithm>
#include <random>
#include <sstream>

#include "bagforge/bag.h"
#include "bagforge/errors.h"
#include "bagforge/grammar.h"
#include "test_util.h"

namespace bagforge {
namespace {

using testing::data_path;
using testing::simple;

std::set<std::string> S(std::initializer_list<const char *> xs) {
  return {xs.begin(), xs.end()};
}

TEST_CASE("simple grammar") {
  const Grammar &g = simple();
  CHECK(g.productions().size() == 7);
  CHECK(g.preterminal_categories() == S({"A", "Det", "N", "P", "Vtra"}));
  CHECK(g.nonterminal_categories() == S({"N1", "NP", "PP", "S", "VP"}));
  CHECK(g.start().category().str() == "S");
  CHECK(g.param_paths().size() == 3);
  CHECK(g.content_hash().size() == 16);
}

TEST_CASE("single-rule grammar") {
  Grammar g = load_grammar(data_path("grammars/n1_only.gr"));
  CHECK(g.nonterminal_categories() == S({"N1"}));
  CHECK(g.preterminal_categories() == S({"N"}));
}

TEST_CASE("preterminal slots match a brute-force lexicon check") {
  for (const char *name : {"grammars/simple.gr", "grammars/simple_vintra.gr",
                           "grammars/bench.gr"}) {
    Grammar g = load_grammar(data_path(name));
    for (size_t p = 0; p < g.productions().size(); ++p) {
      const Production &prod = g.productions()[p];
      CHECK(g.nonterminal_categories().count(
          std::string(prod.mother_category.str())));
      for (size_t i = 0; i < prod.arity(); ++i) {
        bool any = false;
        for (const auto &[word, entries] : g.lexicon()) {
          for (const auto &e : entries) {
            any = any || unify(prod.daughter(i), e.sign).has_value();
          }
        }
        CHECK(g.is_preterminal(p, i) == any);
      }
    }
  }
}

TEST_CASE("grammar errors") {
  CHECK_THROWS_AS(parse_grammar("param sem.arg1\nlex dog: N[sem.arg1=#1]\n"),
                  InputError);
  CHECK_THROWS_AS(parse_grammar("rule r: S -> NP\n"), InputError);
  CHECK_THROWS_AS(parse_grammar("param a\nstart X\nrule r: S -> NP\n"),
                  InputError);
  try {
    parse_grammar("param a\nrule r1: S -> NP\nfrobnicate\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("grammar hash ignores the start sign") {
  Grammar g = simple();
  Grammar np = g.with_start(parse_start("NP"));
  CHECK(np.content_hash() == g.content_hash());
  CHECK(np.start().category().str() == "NP");
  CHECK_THROWS_AS(g.with_start(parse_start("Zz")), InputError);
}

TEST_CASE("two index groups bridged by a preposition") {
  Bag b = load_bag(data_path("bags/dog_with_collar.bag"), simple());
  REQUIRE(b.size() == 6);
  CHECK(b[2].word == "with");
  CHECK(b[2].tags == std::set<Symbol>{Symbol("1"), Symbol("2")});
  auto arg3 = b[2].signs[0].resolve(Path::parse("sem.arg3"));
  REQUIRE(arg3);
  CHECK(b[2].signs[0].value(*arg3).str() == "2");
  CHECK(bag_connected(b));
}

TEST_CASE("bag parsing") {
  CHECK(parse_bag("", simple()).empty());
  Bag two = parse_bag("dog 1\ndog 1\n", simple());
  REQUIRE(two.size() == 2);
  CHECK(two[0].position == 0);
  CHECK(two[1].position == 1);
  CHECK(two[1].label() == "dog#1");

  Bag explicit_form = parse_bag("with sem.arg1=1 sem.arg3=2\n", simple());
  Bag positional = parse_bag("with 1 2\n", simple());
  CHECK(isomorphic(explicit_form[0].signs[0], positional[0].signs[0]));

  CHECK_THROWS_AS(parse_bag("dgo 1\n", simple()), ParseError);
  CHECK_THROWS_AS(parse_bag("dog sem.arg3=1\n", simple()), ParseError);
  CHECK_THROWS_AS(parse_bag("dog 1 2\n", simple()), ParseError);
  CHECK_THROWS_AS(parse_bag("with 1 sem.arg3=2\n", simple()), ParseError);
}

TEST_CASE("bag connectivity") {
  Bag islands = parse_bag("the 1\ndog 1\nthe 2\ncollar 2\n", simple());
  CHECK_FALSE(bag_connected(islands));
  auto comps = bag_components(islands);
  REQUIRE(comps.size() == 2);
  CHECK(describe_components(islands, comps) ==
        "{the#0 dog#1} {the#2 collar#3}");
  CHECK(bag_connected(parse_bag("dog 1\n", simple())));
}

TEST_CASE("print_bag round trip") {
  for (const char *name : {"bags/dog_barked.bag", "bags/dog_with_collar.bag", "bench/b12_embedded.bag"}) {
    const Grammar &g = std::string(name).find("bench") == std::string::npos
                           ? testing::simple_vintra()
                           : testing::bench_grammar();
    Bag b = load_bag(data_path(name), g);
    CHECK(parse_bag(print_bag(b), g) == b);
  }
  Bag mixed = parse_bag("with sem.arg1=1 sem.arg3=2\nthe 2\n", simple());
  CHECK(print_bag(mixed) == "with sem.arg1=1 sem.arg3=2\nthe 2\n");
}

TEST_CASE("bag connectivity is invariant under line permutation") {
  std::vector<std::string> lines = {"the 1", "dog 1", "with 1 2", "the 2",
                                    "brown 2", "collar 2"};
  std::mt19937 rng(5);
  for (int drop = -1; drop < 6; ++drop) {
    std::vector<std::string> sub;
    for (int i = 0; i < 6; ++i) {
      if (i != drop) sub.push_back(lines[i]);
    }
    auto text = [&] {
      std::string t;
      for (const auto &l : sub) t += l + "\n";
      return t;
    };
    bool expected = bag_connected(parse_bag(text(), simple()));
    for (int k = 0; k < 20; ++k) {
      std::shuffle(sub.begin(), sub.end(), rng);
      CHECK(bag_connected(parse_bag(text(), simple())) == expected);
    }
    CHECK(expected == (drop != 2));
  }
}

}  // namespace
}  // namespace bagforge
