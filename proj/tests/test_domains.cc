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

#include <fstream>
#include <sstream>

#include "bagforge/avm_text.h"
#include "bagforge/domain_io.h"
#include "bagforge/domains.h"
#include "bagforge/errors.h"
#include "test_util.h"

namespace bagforge {
namespace {

using testing::data_path;
using testing::simple;

const CompiledDomains &simple_domains() {
  static const CompiledDomains d = compile_domains(simple());
  return d;
}

std::vector<std::string> lines(const DomainSet &d, const char *cat,
                               bool expand = true) {
  return domain_lines(d, expand, std::string_view(cat));
}

bool has_line(const std::vector<std::string> &ls, const std::string &l) {
  return std::find(ls.begin(), ls.end(), l) != ls.end();
}

TEST_CASE("inner domain of a preterminal is itself") {
  CHECK(lines(simple_domains().inner, "Det") ==
        std::vector<std::string>{
            "inner Det[sem.arg1=#0] :: Det[sem.arg1=#0] :: sem.arg1~sem.arg1"});
}

TEST_CASE("inner domain of NP reaches Det, A and N") {
  auto ls = lines(simple_domains().inner, "NP");
  for (const char *lex : {"Det[sem.arg1=#0]", "A[sem.arg1=#0]", "N"}) {
    CHECK(has_line(ls, std::string("inner NP[sem.arg1=#0] :: ") + lex +
                           " :: sem.arg1~sem.arg1"));
  }
}

TEST_CASE("single-rule grammar inner domain") {
  Grammar g = load_grammar(data_path("grammars/n1_only.gr"));
  DomainSet inner = compute_inner(g);
  CHECK(lines(inner, "N1") ==
        std::vector<std::string>{"inner N1[sem=#0] :: N[sem=#0] :: sem~sem"});
}

TEST_CASE("outer domain of NP has exactly three triples") {
  CHECK(lines(simple_domains().outer, "NP") ==
        std::vector<std::string>{
            "outer NP[sem.arg1=#0] :: P[sem.arg3=#0] :: sem.arg1~sem.arg3",
            "outer NP[sem.arg1=#0] :: Vtra[sem.arg3=#0] :: sem.arg1~sem.arg2",
            "outer NP[sem.arg1=#0] :: Vtra[sem.arg3=#0] :: sem.arg1~sem.arg3",
        });
  CHECK(lines(simple_domains().outer, "NP", false) ==
        std::vector<std::string>{
            "outer NP[sem.arg1=#0] :: P[sem.arg3=#0] :: sem.arg1~sem.arg3",
            "outer NP[sem.arg1=#0] :: Vtra[sem.arg3=#0] :: "
            "sem.arg1~sem.arg2, sem.arg1~sem.arg3",
        });
}

TEST_CASE("outer domain of the start sign is empty") {
  CHECK(simple_domains().outer.triples_for("S").empty());
}

TEST_CASE("outer domain of Det") {
  auto ls = lines(simple_domains().outer, "Det", false);
  CHECK(has_line(ls, "outer Det[sem.arg1=#0] :: Vtra[sem.arg3=#0] :: "
                     "sem.arg1~sem.arg2, sem.arg1~sem.arg3"));
  CHECK(has_line(ls, "outer Det[sem.arg1=#0] :: A[sem.arg1=#0] :: "
                     "sem.arg1~sem.arg1"));
}

TEST_CASE("every stored triple has binds and a preterminal lex") {
  for (const DomainSet *d : {&simple_domains().inner, &simple_domains().outer}) {
    for (const DomainTriple &t : d->triples()) {
      CHECK_FALSE(t.binds.empty());
      CHECK(simple().preterminal_categories().count(
          std::string(t.lex.category().str())));
    }
  }
}

TEST_CASE("lex_in_outer") {
  const DomainSet &outer = simple_domains().outer;
  auto np1 = parse_sign("NP[sem.arg1=@1, sem.reln=dog]");
  auto chased = parse_sign("Vtra[sem.reln=chase, sem.arg2=@1, sem.arg3=@2]");
  Binds got = lex_in_outer(outer, np1, chased);
  CHECK(binds_str(got) == "sem.arg1~sem.arg2");

  auto brown = parse_sign("A[sem.reln=brown, sem.arg1=@1]");
  CHECK(lex_in_outer(outer, np1, brown).empty());

  auto other = parse_sign("Vtra[sem.reln=chase, sem.arg2=@2, sem.arg3=@3]");
  CHECK(lex_in_outer(outer, np1, other).empty());
}

TEST_CASE("fixed point iterations are monotone") {
  CompileLog inner_log, outer_log;
  DomainSet inner = compute_inner(simple(), &inner_log);
  DomainSet outer = compute_outer(simple(), inner, &outer_log);
  CHECK(inner_log.sweeps() >= 2);
  CHECK(outer_log.sweeps() >= 2);
  CHECK(inner_log.monotone());
  CHECK(outer_log.monotone());
  CHECK(outer == simple_domains().outer);

  CompileLog shrinking;
  shrinking.snapshots = {{0, {{"a :: b", 2}}}, {1, {{"a :: b", 1}}}};
  CHECK_FALSE(shrinking.monotone());
  CompileLog vanishing;
  vanishing.snapshots = {{0, {{"a :: b", 1}}}, {1, {}}};
  CHECK_FALSE(vanishing.monotone());
}

TEST_CASE("domain cache round trip") {
  std::stringstream ss;
  save_domains(ss, simple_domains(), simple().content_hash());
  CompiledDomains back = load_domains(ss, simple());
  CHECK(back.inner == simple_domains().inner);
  CHECK(back.outer == simple_domains().outer);
}

TEST_CASE("domain cache golden file") {
  std::stringstream ss;
  save_domains(ss, simple_domains(), simple().content_hash());
  std::ifstream golden(std::string(BAGFORGE_TEST_DIR) + "/golden/simple.domains");
  REQUIRE(golden);
  std::stringstream want;
  want << golden.rdbuf();
  CHECK(ss.str() == want.str());
}

TEST_CASE("domain cache errors") {
  std::stringstream ss;
  save_domains(ss, simple_domains(), "0000000000000000");
  CHECK_THROWS_AS(load_domains(ss, simple()), StaleCacheError);

  std::stringstream version("bagforge-domains v9 " + simple().content_hash() +
                            "\n");
  CHECK_THROWS_AS(load_domains(version, simple()), InputError);

  std::stringstream magic("not-a-cache\n");
  CHECK_THROWS_AS(load_domains(magic, simple()), InputError);

  std::stringstream bad("bagforge-domains v1 " + simple().content_hash() +
                        "\nouter NP[sem.arg1=#0] :: Vtra\n");
  CHECK_THROWS_AS(load_domains(bad, simple()), ParseError);
}

}  // namespace
}  // namespace bagforge
