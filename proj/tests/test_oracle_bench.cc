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

#include <sstream>

#include "bagforge/avm_text.h"
#include "bagforge/bench.h"
#include "bagforge/domain_io.h"
#include "bagforge/errors.h"
#include "bagforge/oracle.h"
#include "test_util.h"

namespace bagforge {
namespace {

using testing::data_path;
using testing::simple;
using testing::simple_vintra;

TEST_CASE("permutation oracle") {
  const Grammar &g = simple();
  Bag the_dog = parse_bag("the 1\ndog 1\n", g);
  CHECK(permutation_oracle(g, the_dog, parse_start("NP")) ==
        std::set<std::string>{"the dog"});
  CHECK(permutation_oracle(g, parse_bag("dog 1\n", g), g.start()).empty());

  Bag barked = load_bag(data_path("bags/dog_barked.bag"), simple_vintra());
  CHECK(permutation_oracle(simple_vintra(), barked, simple_vintra().start()) ==
        std::set<std::string>{"the big brown dog barked",
                              "the brown big dog barked"});
}

TEST_CASE("permutation oracle size guard") {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "big 1\n";
  Bag big = parse_bag(text, simple());
  CHECK_THROWS_AS(permutation_oracle(simple(), big, simple().start()),
                  GenerationError);
}

TEST_CASE("permutation oracle keeps duplicate words apart") {
  const Grammar &g = simple();
  Bag b = parse_bag("the 1\ndog 1\nwith 1 2\nthe 2\ncollar 2\n", g);
  CHECK(permutation_oracle(g, b, parse_start("NP")) ==
        std::set<std::string>{"the dog with the collar"});
}

TEST_CASE("derivation oracle") {
  CHECK(derivation_oracle(simple(), 0).empty());
  DomainSet d3 = derivation_oracle(simple(), 3);
  bool found = false;
  for (const DomainTriple &t : d3.triples()) {
    if (t.sign.category().str() == "NP" && t.lex.category().str() == "Vtra" &&
        t.binds.count({Path::parse("sem.arg1"), Path::parse("sem.arg2")})) {
      found = true;
    }
  }
  CHECK(found);

  DomainSet d5 = derivation_oracle(simple(), 5);
  CHECK(uncovered_triples(d5, d3).empty());
  CHECK(d5.size() >= d3.size());
  CHECK_THROWS_AS(derivation_oracle(simple(), 7), GenerationError);
}

TEST_CASE("compiled outer domains cover the derivation oracle") {
  for (const Grammar *g : {&simple(), &simple_vintra()}) {
    DomainSet outer = compile_domains(*g).outer;
    auto missing = uncovered_triples(outer, derivation_oracle(*g, 5));
    for (const auto &m : missing) MESSAGE(m);
    CHECK(missing.empty());
  }
}

TEST_CASE("uncovered triples are reported") {
  Restrictor r = simple().restrictor();
  DomainSet::Table t;
  Binds b{{Path::parse("sem.arg1"), Path::parse("sem.arg1")}};
  t[restrict(parse_sign("NP[sem.arg1=@1]"), r)]
   [restrict(parse_sign("A[sem.arg1=@1]"), r)] = b;
  DomainSet bogus(DomainKind::kOuter, r, t);
  auto missing = uncovered_triples(compile_domains(simple()).outer, bogus);
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].find("missing sem.arg1~sem.arg1") != std::string::npos);
}

TEST_CASE("bench") {
  const Grammar &g = testing::bench_grammar();
  DomainSet outer = compile_domains(g).outer;
  CHECK(run_bench(g, outer, {}).empty());

  std::vector<BenchBag> bags;
  for (const char *name : {"b02_fido_barked", "b11_intensifier_pp"}) {
    std::string path = data_path(std::string("bench/") + name + ".bag");
    bags.push_back({name, load_bag(path, g)});
  }
  bags.push_back({"islands", parse_bag("fido 1\nkim 2\n", g)});
  auto rows = run_bench(g, outer, bags);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].edges_pruned == rows[0].edges_unpruned);
  CHECK(rows[1].bag_size == 11);
  CHECK(rows[1].edges_pruned < rows[1].edges_unpruned);
  CHECK_FALSE(rows[2].error.empty());

  std::ostringstream tsv;
  write_bench_tsv(tsv, rows, false);
  std::string want =
      "bag_size\ttime_unpruned_s\tedges_unpruned\ttime_pruned_s\t"
      "edges_pruned\n2\t0.0\t" +
      std::to_string(rows[0].edges_unpruned) + "\t0.0\t" +
      std::to_string(rows[0].edges_pruned) + "\n11\t0.0\t" +
      std::to_string(rows[1].edges_unpruned) + "\t0.0\t" +
      std::to_string(rows[1].edges_pruned) + "\n";
  CHECK(tsv.str() == want);
}

TEST_CASE("twelve-element bag with stacked adjectives and a PP") {
  const Grammar &g = testing::bench_grammar();
  DomainSet outer = compile_domains(g).outer;
  Bag b = parse_bag(
      "the 1\nvery 1\nbig 1\nold 1\nbrown 1\ndog 1\nin 1 2\nthe 2\n"
      "park 2\nchased e1 1 3\nkim 3\nloudly e1\n",
      g);
  REQUIRE(b.size() == 12);
  auto rows = run_bench(g, outer, {{"twelve", b}});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error.empty());
  CHECK(rows[0].edges_pruned < rows[0].edges_unpruned);
}

}  // namespace
}  // namespace bagforge
