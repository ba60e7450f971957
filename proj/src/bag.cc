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

#include "bagforge/bag.h"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bagforge/errors.h"

namespace bagforge {

std::string BagElement::label() const {
  return word + "#" + std::to_string(position);
}

bool BagElement::operator==(const BagElement &other) const {
  if (position != other.position || word != other.word ||
      assignments != other.assignments || signs.size() != other.signs.size()) {
    return false;
  }
  for (size_t i = 0; i < signs.size(); ++i) {
    if (!isomorphic(signs[i], other.signs[i])) return false;
  }
  return true;
}

namespace {

enum class Consistency { kOk, kMissingPath, kClash };

// Instantiates one lexical entry with the line's assignments.
Consistency instantiate(const LexicalEntry &entry,
                        const std::vector<IndexAssignment> &assignments,
                        const std::vector<Path> &params,
                        FeatureStructure &out) {
  std::vector<std::pair<Path, Symbol>> bindings;
  if (!assignments.empty() && !assignments.front().path) {
    if (assignments.size() != entry.param_order.size()) {
      return Consistency::kClash;
    }
    for (size_t i = 0; i < assignments.size(); ++i) {
      bindings.emplace_back(entry.param_order[i], assignments[i].tag);
    }
  } else {
    for (const IndexAssignment &a : assignments) {
      bindings.emplace_back(*a.path, a.tag);
    }
  }
  FsBuilder b;
  std::vector<NodeId> map;
  NodeId root = b.import(entry.sign, &map);
  for (const auto &[path, tag] : bindings) {
    auto n = entry.sign.resolve(path);
    if (!n) return Consistency::kMissingPath;
    if (!b.unify(map[*n], b.add_index(tag))) return Consistency::kClash;
  }
  auto fs = b.build(root);
  if (!fs) return Consistency::kClash;
  // Every lexical sign must be fully indexed.
  for (const Path &p : params) {
    auto n = fs->resolve(p);
    if (n && fs->kind(*n) != NodeKind::kIndex) return Consistency::kClash;
  }
  out = std::move(*fs);
  return Consistency::kOk;
}

}  // namespace

Bag parse_bag(std::string_view text, const Grammar &g) {
  Bag bag;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream tokens(raw);
    std::string word;
    if (!(tokens >> word) || word[0] == '#') continue;

    BagElement element;
    element.position = bag.size();
    element.word = word;
    std::string tok;
    bool explicit_form = false;
    bool positional_form = false;
    while (tokens >> tok) {
      size_t eq = tok.find('=');
      IndexAssignment a;
      if (eq == std::string::npos) {
        positional_form = true;
        a.tag = Symbol(tok);
      } else {
        explicit_form = true;
        try {
          a.path = Path::parse(std::string_view(tok).substr(0, eq));
        } catch (const std::invalid_argument &e) {
          throw ParseError(line, e.what());
        }
        if (eq + 1 == tok.size()) throw ParseError(line, "empty tag");
        a.tag = Symbol(std::string_view(tok).substr(eq + 1));
      }
      element.assignments.push_back(a);
    }
    if (explicit_form && positional_form) {
      throw ParseError(line, "mixes positional and path=tag assignments");
    }

    auto entries = g.entries(word);
    if (entries.empty()) throw ParseError(line, "unknown word '" + word + "'");
    bool missing_everywhere = true;
    for (const LexicalEntry &entry : entries) {
      FeatureStructure sign;
      Consistency c = instantiate(entry, element.assignments, g.param_paths(),
                                  sign);
      if (c != Consistency::kMissingPath) missing_everywhere = false;
      if (c == Consistency::kOk) element.signs.push_back(std::move(sign));
    }
    if (explicit_form && missing_everywhere) {
      throw ParseError(line, "assignment to a path absent from every entry of '" +
                                 word + "'");
    }
    if (element.signs.empty()) {
      throw ParseError(line, "no lexical entry of '" + word +
                                 "' is consistent with the index assignments");
    }
    for (const FeatureStructure &sign : element.signs) {
      for (const Path &p : g.param_paths()) {
        auto n = sign.resolve(p);
        if (n && sign.kind(*n) == NodeKind::kIndex) {
          element.tags.insert(sign.value(*n));
        }
      }
    }
    bag.elements.push_back(std::move(element));
  }
  return bag;
}

Bag load_bag(const std::filesystem::path &path, const Grammar &g) {
  return parse_bag(read_file(path), g);
}

std::string print_bag(const Bag &bag) {
  std::string out;
  for (const BagElement &e : bag.elements) {
    out += e.word;
    for (const IndexAssignment &a : e.assignments) {
      out += ' ';
      if (a.path) out += a.path->str() + "=";
      out += a.tag.str();
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<size_t>> bag_components(const Bag &bag) {
  size_t n = bag.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      for (Symbol t : bag[i].tags) {
        if (bag[j].tags.count(t)) {
          parent[find(i)] = find(j);
          break;
        }
      }
    }
  }
  std::vector<std::vector<size_t>> comps;
  std::vector<int> slot(n, -1);
  for (size_t i = 0; i < n; ++i) {
    size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[r]].push_back(i);
  }
  return comps;
}

bool bag_connected(const Bag &bag) { return bag_components(bag).size() <= 1; }

std::string describe_components(const Bag &bag,
                                const std::vector<std::vector<size_t>> &comps) {
  std::string out;
  for (const auto &comp : comps) {
    if (!out.empty()) out += ' ';
    out += '{';
    for (size_t i = 0; i < comp.size(); ++i) {
      if (i > 0) out += ' ';
      out += bag[comp[i]].label();
    }
    out += '}';
  }
  return out;
}

}  // namespace bagforge
