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

#ifndef BAGFORGE_BENCH_H_
#define BAGFORGE_BENCH_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "bagforge/bag.h"
#include "bagforge/domains.h"
#include "bagforge/grammar.h"

namespace bagforge {

struct BenchBag {
  std::string name;
  Bag bag;
};

struct BenchRow {
  std::string name;
  size_t bag_size = 0;
  double time_unpruned_s = 0;
  size_t edges_unpruned = 0;
  double time_pruned_s = 0;
  size_t edges_pruned = 0;
  std::string error;  // set when generation failed for this bag
};

// Generates each bag twice, without and with pruning, in first-solution mode
// with a FIFO agenda. Timings cover generation only. A failing bag yields a
// row with `error` set and the run continues. Throws InvariantViolation if
// pruning ever increases the edge count.
std::vector<BenchRow> run_bench(const Grammar &g, const DomainSet &outer,
                                const std::vector<BenchBag> &bags);

// Bag size, then time and edges without and with pruning; failed rows are
// skipped. `timing` false prints 0.0.
void write_bench_tsv(std::ostream &os, const std::vector<BenchRow> &rows,
                     bool timing = true);

}  // namespace bagforge

#endif  // BAGFORGE_BENCH_H_
