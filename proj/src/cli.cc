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

#include "bagforge/cli.h"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>

#include "bagforge/bench.h"
#include "bagforge/chart.h"
#include "bagforge/domain_io.h"
#include "bagforge/errors.h"
#include "bagforge/oracle.h"

namespace bagforge {

namespace {

namespace fs = std::filesystem;

fs::path default_cache(const fs::path &grammar) {
  fs::path p = grammar;
  return p.replace_extension(".domains");
}

// Loads the cache named by --domains (errors are fatal), or the default
// cache next to the grammar, compiling in memory when that one is missing
// or stale.
CompiledDomains obtain_domains(const Grammar &g, const std::string &grammar,
                               const std::string &explicit_path,
                               std::ostream &err) {
  if (!explicit_path.empty()) return load_domains_file(explicit_path, g);
  fs::path cache = default_cache(grammar);
  if (fs::exists(cache)) {
    try {
      return load_domains_file(cache, g);
    } catch (const StaleCacheError &) {
      err << "notice: " << cache.string()
          << " is stale; compiling domains in memory\n";
      return compile_domains(g);
    }
  }
  err << "notice: no domain cache at " << cache.string()
      << "; compiling domains in memory\n";
  return compile_domains(g);
}

struct Args {
  std::string grammar;
  std::string bag;
  std::vector<std::string> bags;
  std::string domains;
  std::string out;
  std::string start;
  std::string cat;
  std::string stats = "tsv";
  std::string agenda = "fifo";
  uint64_t seed = 0;
  bool no_prune = false;
  bool all_solutions = false;
  bool first_solution = false;
  bool all_derivations = false;
  bool trace_prune = false;
  bool no_timing = false;
  bool inner = false;
  bool merged = false;
};

Grammar load_with_start(const Args &a) {
  Grammar g = load_grammar(a.grammar);
  if (!a.start.empty()) g = g.with_start(parse_start(a.start));
  return g;
}

int cmd_compile(const Args &a, std::ostream &out) {
  Grammar g = load_grammar(a.grammar);
  CompiledDomains d = compile_domains(g);
  fs::path path = a.out.empty() ? default_cache(a.grammar) : fs::path(a.out);
  save_domains_file(path, d, g.content_hash());
  out << "wrote " << path.string() << ": " << d.inner.size() << " inner, "
      << d.outer.size() << " outer triples\n";
  return kExitOk;
}

int cmd_generate(const Args &a, std::ostream &out, std::ostream &err) {
  Grammar g = load_with_start(a);
  Bag bag = load_bag(a.bag, g);
  GenOptions opts;
  opts.prune = !a.no_prune;
  opts.all_solutions = !a.first_solution;
  opts.seed = a.seed;
  if (a.agenda == "lifo") opts.order = AgendaOrder::kLifo;
  if (a.agenda == "random") opts.order = AgendaOrder::kRandom;
  if (a.trace_prune) opts.trace = &err;
  std::optional<CompiledDomains> domains;
  if (opts.prune) domains = obtain_domains(g, a.grammar, a.domains, err);
  GenResult r =
      generate(g, bag, domains ? &domains->outer : nullptr, opts);

  if (a.all_derivations) {
    std::vector<std::string> lines;
    for (const Derivation &d : r.derivations) lines.push_back(d.tree);
    std::sort(lines.begin(), lines.end());
    for (const auto &l : lines) out << l << '\n';
  } else {
    for (const auto &s : r.strings) out << s << '\n';
  }
  const double t = a.no_timing ? 0.0 : r.stats.elapsed_s;
  if (a.stats == "json") {
    nlohmann::ordered_json j;
    j["solutions"] = r.strings.size();
    j["derivations"] = r.derivations.size();
    j["edges_total"] = r.stats.edges_total;
    j["edges_inactive"] = r.stats.edges_inactive;
    j["pruned"] = r.stats.pruned;
    j["time_s"] = t;
    out << j.dump() << '\n';
  } else {
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.3f", t);
    out << "stats\tsolutions=" << r.strings.size()
        << "\tedges_total=" << r.stats.edges_total
        << "\tedges_inactive=" << r.stats.edges_inactive
        << "\tpruned=" << r.stats.pruned << "\ttime_s=" << time_buf << '\n';
  }
  return kExitOk;
}

int cmd_oracle(const Args &a, std::ostream &out) {
  Grammar g = load_with_start(a);
  Bag bag = load_bag(a.bag, g);
  for (const auto &s : permutation_oracle(g, bag, g.start())) out << s << '\n';
  return kExitOk;
}

int cmd_bench(const Args &a, std::ostream &out, std::ostream &err) {
  Grammar g = load_with_start(a);
  CompiledDomains d = obtain_domains(g, a.grammar, a.domains, err);
  std::vector<BenchBag> bags;
  for (const auto &path : a.bags) {
    bags.push_back({path, load_bag(path, g)});
  }
  auto rows = run_bench(g, d.outer, bags);
  write_bench_tsv(out, rows, !a.no_timing);
  int status = kExitOk;
  for (const auto &r : rows) {
    if (r.error.empty()) continue;
    err << r.name << ": " << r.error << '\n';
    status = kExitInput;
  }
  return status;
}

int cmd_dump(const Args &a, std::ostream &out) {
  Grammar g = load_grammar(a.grammar);
  CompiledDomains d = a.domains.empty() ? compile_domains(g)
                                        : load_domains_file(a.domains, g);
  std::optional<std::string_view> cat;
  if (!a.cat.empty()) cat = a.cat;
  for (const auto &line :
       domain_lines(a.inner ? d.inner : d.outer, !a.merged, cat)) {
    out << line << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"bagforge: bag generation with outer-domain pruning",
               "bagforge"};
  app.require_subcommand(1);
  Args a;

  auto *compile = app.add_subcommand("compile", "compile and cache domains");
  compile->add_option("--grammar", a.grammar, "grammar file")
      ->required()->check(CLI::ExistingFile);
  compile->add_option("--out", a.out, "cache path (default <grammar>.domains)");

  auto *gen = app.add_subcommand("generate", "generate sentences from a bag");
  gen->add_option("--grammar", a.grammar, "grammar file")
      ->required()->check(CLI::ExistingFile);
  gen->add_option("--bag", a.bag, "bag file")
      ->required()->check(CLI::ExistingFile);
  gen->add_option("--start", a.start, "start category or sign");
  gen->add_flag("--prune,!--no-prune", [&a](int64_t n) { a.no_prune = n < 0; },
                "connectivity pruning (default on)");
  auto *all = gen->add_flag("--all-solutions", a.all_solutions,
                            "run to exhaustion (default)");
  gen->add_flag("--first-solution", a.first_solution,
                "stop at the first complete derivation")
      ->excludes(all);
  gen->add_flag("--all-derivations", a.all_derivations,
                "print every derivation as a bracketed tree");
  gen->add_option("--domains", a.domains, "domain cache");
  gen->add_flag("--trace-prune", a.trace_prune,
                "log each connectivity test to stderr");
  gen->add_option("--stats", a.stats, "stats format")
      ->check(CLI::IsMember({"json", "tsv"}));
  gen->add_flag("--no-timing", a.no_timing, "report zero times");
  gen->add_option("--agenda", a.agenda, "agenda order")
      ->check(CLI::IsMember({"fifo", "lifo", "random"}));
  gen->add_option("--seed", a.seed, "seed for --agenda random");

  auto *oracle = app.add_subcommand("oracle", "brute-force permutation oracle");
  oracle->add_option("--grammar", a.grammar, "grammar file")
      ->required()->check(CLI::ExistingFile);
  oracle->add_option("--bag", a.bag, "bag file")
      ->required()->check(CLI::ExistingFile);
  oracle->add_option("--start", a.start, "start category or sign");

  auto *bench = app.add_subcommand("bench", "pruned vs unpruned benchmark");
  bench->add_option("--grammar", a.grammar, "grammar file")
      ->required()->check(CLI::ExistingFile);
  bench->add_option("--bags", a.bags, "bag files")
      ->required()->check(CLI::ExistingFile);
  bench->add_option("--domains", a.domains, "domain cache");
  bench->add_option("--start", a.start, "start category or sign");
  bench->add_flag("--no-timing", a.no_timing, "report zero times");

  auto *dump = app.add_subcommand("dump-domains", "print domain triples");
  dump->add_option("--grammar", a.grammar, "grammar file")
      ->required()->check(CLI::ExistingFile);
  dump->add_option("--domains", a.domains, "domain cache");
  dump->add_option("--cat", a.cat, "only signs of this category");
  dump->add_flag("--inner", a.inner, "inner instead of outer domains");
  dump->add_flag("--merged", a.merged, "one line per (sign, lex) pair");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    const CLI::App *sub = nullptr;
    for (const CLI::App *s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kExitUsage;
  }

  try {
    if (*compile) return cmd_compile(a, out);
    if (*gen) return cmd_generate(a, out, err);
    if (*oracle) return cmd_oracle(a, out);
    if (*bench) return cmd_bench(a, out, err);
    if (*dump) return cmd_dump(a, out);
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitUsage;
}

}  // namespace bagforge
