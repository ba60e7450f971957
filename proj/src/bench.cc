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

#include "bagforge/bench.h"

#include <cstdio>
#include <ostream>

#include "bagforge/chart.h"
#include "bagforge/errors.h"

namespace bagforge {

std::vector<BenchRow> run_bench(const Grammar &g, const DomainSet &outer,
                                const std::vector<BenchBag> &bags) {
  std::vector<BenchRow> rows;
  GenOptions opts;
  opts.all_solutions = false;
  for (const BenchBag &b : bags) {
    BenchRow row;
    row.name = b.name;
    row.bag_size = b.bag.size();
    try {
      opts.prune = false;
      GenResult plain = generate(g, b.bag, nullptr, opts);
      opts.prune = true;
      GenResult pruned = generate(g, b.bag, &outer, opts);
      row.time_unpruned_s = plain.stats.elapsed_s;
      row.edges_unpruned = plain.stats.edges_total;
      row.time_pruned_s = pruned.stats.elapsed_s;
      row.edges_pruned = pruned.stats.edges_total;
    } catch (const InputError &e) {
      row.error = e.what();
    }
    if (row.error.empty() && row.edges_pruned > row.edges_unpruned) {
      throw InvariantViolation("pruning increased the edge count on " +
                               b.name + ": " +
                               std::to_string(row.edges_unpruned) + " -> " +
                               std::to_string(row.edges_pruned));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_tsv(std::ostream &os, const std::vector<BenchRow> &rows,
                     bool timing) {
  os << "bag_size\ttime_unpruned_s\tedges_unpruned\ttime_pruned_s\t"
        "edges_pruned\n";
  char buf[32];
  auto secs = [&](double s) {
    std::snprintf(buf, sizeof buf, "%.1f", timing ? s : 0.0);
    return std::string(buf);
  };
  for (const BenchRow &r : rows) {
    if (!r.error.empty()) continue;
    os << r.bag_size << '\t' << secs(r.time_unpruned_s) << '\t'
       << r.edges_unpruned << '\t' << secs(r.time_pruned_s) << '\t'
       << r.edges_pruned << '\n';
  }
}

}  // namespace bagforge
