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

#ifndef BAGFORGE_BAG_H_
#define BAGFORGE_BAG_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bagforge/feature_structure.h"
#include "bagforge/grammar.h"

namespace bagforge {

// One index instantiation from a bag line. `path` is empty for positional
// tags, which bind the entry's param paths in order.
struct IndexAssignment {
  std::optional<Path> path;
  Symbol tag;

  bool operator==(const IndexAssignment &other) const = default;
};

struct BagElement {
  size_t position = 0;
  std::string word;
  std::vector<IndexAssignment> assignments;
  // The word's lexical entries that are consistent with the assignments,
  // instantiated. Every param path present in each sign carries a tag.
  std::vector<FeatureStructure> signs;

  // Concrete index tags found at param paths of any sign.
  std::set<Symbol> tags;

  // Label used in diagnostics and traces, e.g. `dog#1` (word#position).
  std::string label() const;

  bool operator==(const BagElement &other) const;
};

// A multiset of lexical signs; positions 0..n-1 keep duplicates distinct.
struct Bag {
  std::vector<BagElement> elements;

  size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  const BagElement &operator[](size_t i) const { return elements[i]; }

  bool operator==(const Bag &other) const = default;
};

// Parses one element per line, either `word tag1 tag2 ...` or
// `word sem.arg1=1 sem.arg3=2`; `#` starts a comment line. Throws ParseError
// for unknown words, paths absent from every entry of the word, and lines
// consistent with no entry.
Bag parse_bag(std::string_view text, const Grammar &g);
Bag load_bag(const std::filesystem::path &path, const Grammar &g);

// Inverse of parse_bag: echoes each element as it was written.
std::string print_bag(const Bag &bag);

// Connected components of the graph linking elements that share a tag, in
// ascending order of their smallest position.
std::vector<std::vector<size_t>> bag_components(const Bag &bag);

// Whether all elements are (transitively) connected; true for bags of size
// 0 or 1.
bool bag_connected(const Bag &bag);

// `{the#0 dog#1} {the#2 collar#3}`.
std::string describe_components(const Bag &bag,
                                const std::vector<std::vector<size_t>> &comps);

}  // namespace bagforge

#endif  // BAGFORGE_BAG_H_
