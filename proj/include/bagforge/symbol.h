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

#ifndef BAGFORGE_SYMBOL_H_
#define BAGFORGE_SYMBOL_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bagforge {

// Interned string. Attribute labels, atoms, categories and index tags are all
// symbols; comparison by id is O(1). The intern table is process-wide and
// thread-safe.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::string_view str() const;
  uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  bool operator==(const Symbol &other) const = default;
  // Orders by id, which is stable within a process only. Use str() for output.
  auto operator<=>(const Symbol &other) const = default;

 private:
  uint32_t id_ = 0;
};

std::ostream &operator<<(std::ostream &os, Symbol s);

// Lexicographic comparison by name, for deterministic printing.
struct SymbolNameLess {
  bool operator()(Symbol a, Symbol b) const { return a.str() < b.str(); }
};

// A sequence of attribute labels, e.g. sem.arg1.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Symbol> labels) : labels_(std::move(labels)) {}

  // Parses dotted form. Throws std::invalid_argument on empty labels.
  static Path parse(std::string_view dotted);

  const std::vector<Symbol> &labels() const { return labels_; }
  size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Symbol operator[](size_t i) const { return labels_[i]; }

  Path prefixed(Symbol head) const;
  std::string str() const;

  bool operator==(const Path &other) const = default;
  // Name order, so sorted containers of paths print alphabetically.
  bool operator<(const Path &other) const;

 private:
  std::vector<Symbol> labels_;
};

std::ostream &operator<<(std::ostream &os, const Path &p);

}  // namespace bagforge

template <>
struct std::hash<bagforge::Symbol> {
  size_t operator()(bagforge::Symbol s) const noexcept { return s.id(); }
};

#endif  // BAGFORGE_SYMBOL_H_
