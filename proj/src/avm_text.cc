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

#include "bagforge/avm_text.h"

#include <stdexcept>

#include "bagforge/restrictor.h"

namespace bagforge {
namespace {

bool is_delimiter(char c) {
  switch (c) {
    case ' ': case '\t': case '\r': case '\n':
    case '[': case ']': case ',': case '=': case '#': case '@': case ':':
      return true;
    default:
      return false;
  }
}

[[noreturn]] void fail(std::string_view text, size_t pos,
                       const std::string &what) {
  throw std::invalid_argument(what + " at '" +
                              std::string(text.substr(pos, 20)) + "'");
}

NodeId read_value(FsBuilder &builder, std::string_view text, size_t &pos,
                  VariableScope &scope) {
  skip_blanks(text, pos);
  if (pos >= text.size()) fail(text, pos, "missing value");
  char c = text[pos];
  if (c == '[') {
    if (pos + 1 < text.size() && text[pos + 1] == ']') {
      pos += 2;
      return builder.add_complex();
    }
    fail(text, pos, "nested sign values are not supported");
  }
  NodeId node;
  bool named = false;
  if (c == '#') {
    ++pos;
    std::string_view name = read_token(text, pos);
    if (name.empty()) fail(text, pos, "missing variable name");
    auto it = scope.find(name);
    if (it == scope.end()) {
      it = scope.emplace(std::string(name), builder.add_variable()).first;
    }
    node = it->second;
    named = true;
  } else {
    node = builder.add_variable();
  }
  if (pos < text.size() && text[pos] == '@') {
    ++pos;
    std::string_view tag = read_token(text, pos);
    if (tag.empty()) fail(text, pos, "missing index tag");
    if (!builder.unify(node, builder.add_index(Symbol(tag)))) {
      fail(text, pos, "conflicting index tag");
    }
    return node;
  }
  if (named) {
    if (pos < text.size() && text[pos] == '=') {
      ++pos;
      std::string_view atom = read_token(text, pos);
      if (atom.empty()) fail(text, pos, "missing atom");
      if (!builder.unify(node, builder.add_atom(Symbol(atom)))) {
        fail(text, pos, "conflicting atom");
      }
    }
    return node;
  }
  std::string_view atom = read_token(text, pos);
  if (atom.empty()) fail(text, pos, "missing value");
  if (atom == "_") return node;
  return builder.add_atom(Symbol(atom));
}

}  // namespace

void skip_blanks(std::string_view text, size_t &pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
}

std::string_view read_token(std::string_view text, size_t &pos) {
  size_t start = pos;
  while (pos < text.size() && !is_delimiter(text[pos])) ++pos;
  return text.substr(start, pos - start);
}

NodeId read_sign(FsBuilder &builder, std::string_view text, size_t &pos,
                 VariableScope &scope) {
  skip_blanks(text, pos);
  NodeId root = builder.add_complex();
  std::string_view cat = read_token(text, pos);
  if (!cat.empty()) {
    NodeId slot = *builder.ensure_path(root, category_path());
    builder.unify(slot, builder.add_atom(Symbol(cat)));
  }
  if (pos >= text.size() || text[pos] != '[') {
    if (cat.empty()) fail(text, pos, "expected sign");
    return root;
  }
  ++pos;
  skip_blanks(text, pos);
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
    return root;
  }
  while (true) {
    skip_blanks(text, pos);
    std::string_view path_text = read_token(text, pos);
    if (path_text.empty()) fail(text, pos, "expected path");
    Path path = Path::parse(path_text);
    skip_blanks(text, pos);
    if (pos >= text.size() || text[pos] != '=') fail(text, pos, "expected '='");
    ++pos;
    NodeId value = read_value(builder, text, pos, scope);
    auto slot = builder.ensure_path(root, path);
    if (!slot || !builder.unify(*slot, value)) {
      fail(text, pos, "conflicting constraint on " + path.str());
    }
    skip_blanks(text, pos);
    if (pos >= text.size()) fail(text, pos, "unterminated sign");
    if (text[pos] == ',') {
      ++pos;
      continue;
    }
    if (text[pos] == ']') {
      ++pos;
      return root;
    }
    fail(text, pos, "expected ',' or ']'");
  }
}

FeatureStructure parse_sign(std::string_view text) {
  FsBuilder builder;
  VariableScope scope;
  size_t pos = 0;
  NodeId root = read_sign(builder, text, pos, scope);
  skip_blanks(text, pos);
  if (pos != text.size()) fail(text, pos, "trailing input");
  auto fs = builder.build(root);
  if (!fs) throw std::invalid_argument("cyclic sign: " + std::string(text));
  return *fs;
}

}  // namespace bagforge
