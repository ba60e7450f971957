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

#ifndef BAGFORGE_RESTRICTOR_H_
#define BAGFORGE_RESTRICTOR_H_

#include <string>
#include <vector>

#include "bagforge/feature_structure.h"
#include "bagforge/symbol.h"

namespace bagforge {

// Finite set of paths that defines sign equivalence classes. Always contains
// the category path.
class Restrictor {
 public:
  Restrictor();
  explicit Restrictor(std::vector<Path> paths);

  // Paths in name order, category path included.
  const std::vector<Path> &paths() const { return paths_; }
  bool contains(const Path &p) const;

 private:
  std::vector<Path> paths_;
};

const Path &category_path();

// What a restrictor path holds in an abstracted sign.
struct AbstractCell {
  enum class Kind { kAtom, kClass };
  Kind kind = Kind::kClass;
  Symbol atom;        // kAtom
  uint32_t cls = 0;   // kClass: paths with the same class are token identical

  bool operator==(const AbstractCell &other) const = default;
};

// A sign projected onto a restrictor: its category plus, for each present
// non-category restrictor path, either its atom value or a token-identity
// class. Index tags are dropped, so finitely many abstract signs exist for a
// fixed grammar and restrictor. Absent paths are simply not listed.
class AbstractSign {
 public:
  AbstractSign() = default;
  AbstractSign(Symbol category,
               std::vector<std::pair<Path, AbstractCell>> cells);

  Symbol category() const { return category_; }
  const std::vector<std::pair<Path, AbstractCell>> &cells() const {
    return cells_;
  }
  const AbstractCell *cell(const Path &p) const;

  // Rebuilds a feature structure carrying exactly these constraints.
  FeatureStructure to_fs() const;

  // `Cat[path=val, path=#n]`; just `Cat` when no cells are present.
  const std::string &str() const { return text_; }

  bool operator==(const AbstractSign &other) const {
    return text_ == other.text_;
  }
  // Text order keeps containers (and therefore dumps) deterministic.
  bool operator<(const AbstractSign &other) const {
    return text_ < other.text_;
  }

 private:
  std::string render() const;

  Symbol category_;
  std::vector<std::pair<Path, AbstractCell>> cells_;
  std::string text_;
};

// Projects s onto r. Throws InputError if s has no atomic category.
AbstractSign restrict(const FeatureStructure &s, const Restrictor &r);

// Whether two abstract signs describe a common sign (their reconstructions
// unify). Categories must match.
bool compatible(const AbstractSign &a, const AbstractSign &b);

}  // namespace bagforge

#endif  // BAGFORGE_RESTRICTOR_H_
