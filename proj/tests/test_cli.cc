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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bagforge/cli.h"
#include "test_util.h"

namespace bagforge {
namespace {

using testing::data_path;

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

const std::string kSimple = data_path("grammars/simple.gr");
const std::string kSimpleVintra = data_path("grammars/simple_vintra.gr");

TEST_CASE("generate with start NP") {
  Run r = run({"generate", "--grammar", kSimple, "--bag",
               data_path("bags/big_brown_dog.bag"), "--start", "NP", "--prune",
               "--no-timing"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "the big brown dog\nthe brown big dog\n"
        "stats\tsolutions=2\tedges_total=21\tedges_inactive=11\tpruned=3\t"
        "time_s=0.000\n");
}

TEST_CASE("prune and no-prune print the same strings") {
  for (const char *bag : {"bags/dog_barked.bag", "bags/dog_with_collar.bag"}) {
    auto strings = [&](const char *flag) {
      Run r = run({"generate", "--grammar", kSimpleVintra, "--bag", data_path(bag),
                   flag, "--no-timing"});
      CHECK(r.status == 0);
      return r.out.substr(0, r.out.find("stats"));
    };
    CHECK(strings("--prune") == strings("--no-prune"));
  }
}

TEST_CASE("generate output is deterministic") {
  std::vector<std::string> args = {"generate", "--grammar", kSimpleVintra, "--bag",
                                   data_path("bags/dog_barked.bag"),
                                   "--all-derivations", "--no-timing",
                                   "--stats", "json"};
  Run a = run(args);
  Run b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out ==
        "((the (big (brown dog))) barked)\n((the (brown (big dog))) barked)\n"
        "{\"solutions\":2,\"derivations\":2,\"edges_total\":31,"
        "\"edges_inactive\":18,\"pruned\":3,\"time_s\":0.0}\n");
}

TEST_CASE("dump-domains for NP") {
  Run r = run({"dump-domains", "--grammar", kSimple, "--cat", "NP"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "outer NP[sem.arg1=#0] :: P[sem.arg3=#0] :: sem.arg1~sem.arg3\n"
        "outer NP[sem.arg1=#0] :: Vtra[sem.arg3=#0] :: sem.arg1~sem.arg2\n"
        "outer NP[sem.arg1=#0] :: Vtra[sem.arg3=#0] :: sem.arg1~sem.arg3\n");
}

TEST_CASE("compile then use the cache") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bagforge_cli_test";
  fs::create_directories(dir);
  fs::path cache = dir / "simple.domains";
  Run c = run({"compile", "--grammar", kSimple, "--out", cache.string()});
  CHECK(c.status == 0);
  CHECK(fs::exists(cache));

  Run g = run({"generate", "--grammar", kSimple, "--bag",
               data_path("bags/big_brown_dog.bag"), "--start", "NP", "--domains",
               cache.string()});
  CHECK(g.status == 0);
  CHECK(g.err.empty());

  Run stale = run({"generate", "--grammar", kSimpleVintra, "--bag",
                   data_path("bags/dog_barked.bag"), "--domains", cache.string()});
  CHECK(stale.status == 3);
  CHECK(stale.err.find("stale") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("missing cache compiles with a notice") {
  Run r = run({"generate", "--grammar", kSimple, "--bag",
               data_path("bags/the_dog.bag"), "--start", "NP"});
  CHECK(r.status == 0);
  CHECK(r.err.find("notice:") == 0);
  CHECK(r.out.find("the dog\n") == 0);
}

TEST_CASE("oracle command") {
  Run r = run({"oracle", "--grammar", kSimpleVintra, "--bag",
               data_path("bags/dog_barked.bag")});
  CHECK(r.status == 0);
  CHECK(r.out == "the big brown dog barked\nthe brown big dog barked\n");
}

TEST_CASE("bench command") {
  Run r = run({"bench", "--grammar", data_path("grammars/bench.gr"), "--bags",
               data_path("bench/b02_fido_barked.bag"),
               data_path("bench/b05_big_dog_chased_kim.bag"), "--no-timing"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("bag_size\ttime_unpruned_s\tedges_unpruned\t"
                    "time_pruned_s\tedges_pruned\n2\t0.0\t",
                    0) == 0);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).status == 2);
  Run bare = run({"generate"});
  CHECK(bare.status == 2);
  CHECK(bare.err.find("Usage") != std::string::npos);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"generate", "--grammar", kSimple, "--bag",
             data_path("bags/big_brown_dog.bag"), "--stats", "xml"})
            .status == 2);

  Run islands = run({"generate", "--grammar", kSimple, "--bag",
                     data_path("bags/dog_collar_no_with.bag")});
  CHECK(islands.status == 3);
  CHECK(islands.err.find("2 components") != std::string::npos);

  Run bad_start = run({"generate", "--grammar", kSimple, "--bag",
                       data_path("bags/big_brown_dog.bag"), "--start", "Zz"});
  CHECK(bad_start.status == 3);
}

}  // namespace
}  // namespace bagforge
