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

#include "bagforge/restrictor.h"

#include <algorithm>
#include <map>

#include "bagforge/errors.h"

namespace bagforge {

const Path &category_path() {
  static const Path *p = new Path(std::vector<Symbol>{category_label()});
  return *p;
}

Restrictor::Restrictor() : paths_{category_path()} {}

Restrictor::Restrictor(std::vector<Path> paths) : paths_(std::move(paths)) {
  if (std::find(paths_.begin(), paths_.end(), category_path()) ==
      paths_.end()) {
    paths_.push_back(category_path());
  }
  std::sort(paths_.begin(), paths_.end());
  paths_.erase(std::unique(paths_.begin(), paths_.end()), paths_.end());
}

bool Restrictor::contains(const Path &p) const {
  return std::binary_search(paths_.begin(), paths_.end(), p);
}

AbstractSign::AbstractSign(Symbol category,
                           std::vector<std::pair<Path, AbstractCell>> cells)
    : category_(category), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  text_ = render();
}

const AbstractCell *AbstractSign::cell(const Path &p) const {
  for (const auto &[path, c] : cells_) {
    if (path == p) return &c;
  }
  return nullptr;
}

FeatureStructure AbstractSign::to_fs() const {
  FsBuilder b;
  NodeId root = b.add_complex();
  b.unify(*b.ensure_path(root, category_path()), b.add_atom(category_));
  std::map<uint32_t, NodeId> classes;
  for (const auto &[path, c] : cells_) {
    auto n = b.ensure_path(root, path);
    if (!n) throw InvariantViolation("abstract sign path blocked: " + str());
    NodeId value;
    if (c.kind == AbstractCell::Kind::kAtom) {
      value = b.add_atom(c.atom);
    } else {
      auto it = classes.find(c.cls);
      if (it == classes.end()) {
        it = classes.emplace(c.cls, b.add_variable()).first;
      }
      value = it->second;
    }
    if (!b.unify(*n, value)) {
      throw InvariantViolation("inconsistent abstract sign: " + str());
    }
  }
  auto fs = b.build(root);
  if (!fs) throw InvariantViolation("cyclic abstract sign: " + str());
  return *fs;
}

std::string AbstractSign::render() const {
  std::string out(category_.str());
  if (cells_.empty()) return out;
  out += '[';
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (i > 0) out += ", ";
    const auto &[path, c] = cells_[i];
    out += path.str() + "=";
    if (c.kind == AbstractCell::Kind::kAtom) {
      out += c.atom.str();
    } else {
      out += "#" + std::to_string(c.cls);
    }
  }
  out += ']';
  return out;
}

AbstractSign restrict(const FeatureStructure &s, const Restrictor &r) {
  Symbol category = s.category();
  if (category.empty()) {
    throw InputError("sign has no atomic category: " + to_avm(s));
  }
  std::vector<std::pair<Path, AbstractCell>> cells;
  std::map<NodeId, uint32_t> classes;
  for (const Path &path : r.paths()) {
    if (path == category_path()) continue;
    auto n = s.resolve(path);
    if (!n) continue;
    AbstractCell c;
    if (s.kind(*n) == NodeKind::kAtom) {
      c.kind = AbstractCell::Kind::kAtom;
      c.atom = s.value(*n);
    } else {
      auto it = classes.find(*n);
      if (it == classes.end()) {
        it = classes.emplace(*n, static_cast<uint32_t>(classes.size())).first;
      }
      c.kind = AbstractCell::Kind::kClass;
      c.cls = it->second;
    }
    cells.emplace_back(path, c);
  }
  return AbstractSign(category, std::move(cells));
}

bool compatible(const AbstractSign &a, const AbstractSign &b) {
  if (a.category() != b.category()) return false;
  return unify(a.to_fs(), b.to_fs()).has_value();
}

}  // namespace bagforge
