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

#include "bagforge/symbol.h"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace bagforge {
namespace {

class InternTable {
 public:
  InternTable() { names_.emplace_back(); }

  uint32_t intern(std::string_view name) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    names_.emplace_back(name);
    uint32_t id = static_cast<uint32_t>(names_.size() - 1);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::string_view name(uint32_t id) {
    std::lock_guard<std::mutex> lock(mu_);
    return names_[id];
  }

 private:
  std::mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, uint32_t> ids_;
};

InternTable &table() {
  static InternTable *t = new InternTable();
  return *t;
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(table().intern(name)) {}

std::string_view Symbol::str() const { return table().name(id_); }

std::ostream &operator<<(std::ostream &os, Symbol s) { return os << s.str(); }

Path Path::parse(std::string_view dotted) {
  std::vector<Symbol> labels;
  size_t start = 0;
  while (true) {
    size_t dot = dotted.find('.', start);
    std::string_view part = dotted.substr(start, dot == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : dot - start);
    if (part.empty()) {
      throw std::invalid_argument("empty label in path '" +
                                  std::string(dotted) + "'");
    }
    labels.emplace_back(part);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Path(std::move(labels));
}

Path Path::prefixed(Symbol head) const {
  std::vector<Symbol> labels;
  labels.reserve(labels_.size() + 1);
  labels.push_back(head);
  labels.insert(labels.end(), labels_.begin(), labels_.end());
  return Path(std::move(labels));
}

std::string Path::str() const {
  std::string out;
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (i > 0) out += '.';
    out += labels_[i].str();
  }
  return out;
}

bool Path::operator<(const Path &other) const {
  size_t n = std::min(labels_.size(), other.labels_.size());
  for (size_t i = 0; i < n; ++i) {
    if (labels_[i] == other.labels_[i]) continue;
    return labels_[i].str() < other.labels_[i].str();
  }
  return labels_.size() < other.labels_.size();
}

std::ostream &operator<<(std::ostream &os, const Path &p) {
  return os << p.str();
}

}  // namespace bagforge
