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

#include "bagforge/grammar.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bagforge/avm_text.h"
#include "bagforge/errors.h"

namespace bagforge {

Symbol mother_label() {
  static const Symbol kMother("m");
  return kMother;
}

Symbol daughter_label(size_t i) {
  static const std::vector<Symbol> *kCommon = [] {
    auto *v = new std::vector<Symbol>;
    for (int d = 0; d < 8; ++d) v->emplace_back("d" + std::to_string(d));
    return v;
  }();
  if (i < kCommon->size()) return (*kCommon)[i];
  return Symbol("d" + std::to_string(i));
}

std::span<const LexicalEntry> Grammar::entries(std::string_view word) const {
  auto it = lexicon_.find(word);
  if (it == lexicon_.end()) return {};
  return it->second;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_blanks(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

FeatureStructure build_or_throw(FsBuilder &b, NodeId root, int line) {
  auto fs = b.build(root);
  if (!fs) throw ParseError(line, "cyclic structure");
  return *fs;
}

Production parse_rule(std::string_view body, int line) {
  size_t colon = body.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError(line, "expected 'rule <name>: Mother -> Daughters'");
  }
  Production p;
  p.name = trim(body.substr(0, colon));
  if (p.name.empty()) throw ParseError(line, "rule without a name");
  std::string_view rest = body.substr(colon + 1);

  FsBuilder b;
  VariableScope scope;
  NodeId root = b.add_complex();
  size_t pos = 0;
  std::vector<NodeId> signs;
  try {
    signs.push_back(read_sign(b, rest, pos, scope));
    skip_blanks(rest, pos);
    if (rest.substr(pos, 2) != "->") {
      throw ParseError(line, "expected '->' after rule mother");
    }
    pos += 2;
    while (true) {
      skip_blanks(rest, pos);
      if (pos >= rest.size() || rest[pos] == '\r') break;
      signs.push_back(read_sign(b, rest, pos, scope));
    }
  } catch (const std::invalid_argument &e) {
    throw ParseError(line, e.what());
  }
  if (signs.size() < 2) throw ParseError(line, "rule has no daughters");
  for (size_t i = 0; i < signs.size(); ++i) {
    Symbol label = i == 0 ? mother_label() : daughter_label(i - 1);
    NodeId slot = *b.ensure_path(root, Path(std::vector<Symbol>{label}));
    b.unify(slot, signs[i]);
  }
  p.rule = build_or_throw(b, root, line);
  p.mother_node = *p.rule.child(p.rule.root(), mother_label());
  p.mother_category = p.rule.sub(p.mother_node).category();
  if (p.mother_category.empty()) {
    throw ParseError(line, "rule mother has no category");
  }
  for (size_t i = 0; i + 1 < signs.size(); ++i) {
    NodeId d = *p.rule.child(p.rule.root(), daughter_label(i));
    p.daughter_nodes.push_back(d);
    Symbol cat = p.rule.sub(d).category();
    if (cat.empty()) {
      throw ParseError(line, "daughter " + std::to_string(i + 1) +
                                 " of rule " + p.name + " has no category");
    }
    p.daughter_categories.push_back(cat);
  }
  return p;
}

LexicalEntry parse_lex(std::string_view body, int line,
                       const std::vector<Path> &params) {
  size_t colon = body.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError(line, "expected 'lex <word>: Sign'");
  }
  LexicalEntry entry;
  entry.word = trim(body.substr(0, colon));
  if (entry.word.empty() || entry.word.find(' ') != std::string::npos) {
    throw ParseError(line, "bad word form '" + entry.word + "'");
  }
  try {
    entry.sign = parse_sign(trim(body.substr(colon + 1)));
  } catch (const std::invalid_argument &e) {
    throw ParseError(line, e.what());
  }
  if (entry.sign.category().empty()) {
    throw ParseError(line, "lexical entry '" + entry.word +
                               "' has no category");
  }
  std::vector<NodeId> seen;
  for (const Path &p : params) {
    auto n = entry.sign.resolve(p);
    if (!n) continue;
    if (std::find(seen.begin(), seen.end(), *n) != seen.end()) continue;
    seen.push_back(*n);
    entry.param_order.push_back(p);
  }
  return entry;
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

FeatureStructure parse_start(std::string_view text) {
  try {
    return parse_sign(trim(text));
  } catch (const std::invalid_argument &e) {
    throw InputError(std::string("bad start sign: ") + e.what());
  }
}

Grammar parse_grammar(std::string_view text) {
  Grammar g;
  std::vector<std::pair<int, std::string>> lex_lines;
  std::vector<Path> restrict_paths;
  bool have_restrict = false;
  bool have_start = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // '#' also marks rule variables, so only whole-line comments exist.
    std::string content = trim(raw);
    if (content.empty() || content[0] == '#') continue;
    size_t sp = content.find_first_of(" \t");
    std::string directive = content.substr(0, sp);
    std::string body =
        sp == std::string::npos ? std::string() : trim(content.substr(sp));

    if (directive == "param") {
      for (const auto &tok : split_blanks(body)) {
        try {
          g.param_paths_.push_back(Path::parse(tok));
        } catch (const std::invalid_argument &e) {
          throw ParseError(line, e.what());
        }
      }
    } else if (directive == "restrict") {
      have_restrict = true;
      for (const auto &tok : split_blanks(body)) {
        try {
          restrict_paths.push_back(Path::parse(tok));
        } catch (const std::invalid_argument &e) {
          throw ParseError(line, e.what());
        }
      }
    } else if (directive == "start") {
      try {
        g.start_ = parse_sign(body);
      } catch (const std::invalid_argument &e) {
        throw ParseError(line, e.what());
      }
      have_start = true;
    } else if (directive == "rule") {
      g.productions_.push_back(parse_rule(body, line));
    } else if (directive == "lex") {
      lex_lines.emplace_back(line, body);
    } else {
      throw ParseError(line, "unknown directive '" + directive + "'");
    }
  }

  if (g.param_paths_.empty()) {
    throw InputError("grammar declares no connectivity parameter paths");
  }
  if (g.productions_.empty()) throw InputError("grammar has no rules");
  for (const auto &[l, body] : lex_lines) {
    LexicalEntry e = parse_lex(body, l, g.param_paths_);
    g.lexicon_[e.word].push_back(std::move(e));
  }
  if (have_restrict) {
    if (std::find(restrict_paths.begin(), restrict_paths.end(),
                  category_path()) == restrict_paths.end()) {
      throw InputError("restrictor must include the category path");
    }
    for (const Path &p : g.param_paths_) {
      if (std::find(restrict_paths.begin(), restrict_paths.end(), p) ==
          restrict_paths.end()) {
        throw InputError("restrictor must include param path " + p.str());
      }
    }
  } else {
    restrict_paths = g.param_paths_;
  }
  g.restrictor_ = Restrictor(restrict_paths);
  if (!have_start) g.start_ = parse_sign("S");
  g.finalize();
  return g;
}

void Grammar::finalize() {
  nonterminals_.clear();
  preterminals_.clear();
  preterminal_slots_.clear();
  for (const Production &p : productions_) {
    nonterminals_.emplace(p.mother_category.str());
  }
  for (const Production &p : productions_) {
    std::vector<bool> slots(p.arity(), false);
    for (size_t i = 0; i < p.arity(); ++i) {
      FeatureStructure d = p.daughter(i);
      for (const auto &[word, entries] : lexicon_) {
        for (const LexicalEntry &e : entries) {
          if (e.sign.category() != p.daughter_categories[i]) continue;
          if (unify(d, e.sign)) {
            slots[i] = true;
            break;
          }
        }
        if (slots[i]) break;
      }
      if (slots[i]) preterminals_.emplace(p.daughter_categories[i].str());
    }
    preterminal_slots_.push_back(std::move(slots));
  }
  bool start_ok = false;
  for (const Production &p : productions_) {
    if (unify(p.mother(), start_)) {
      start_ok = true;
      break;
    }
  }
  if (!start_ok) {
    throw InputError("start sign " + to_avm(start_) +
                     " matches no production mother");
  }
}

Grammar Grammar::with_start(const FeatureStructure &start) const {
  Grammar g = *this;
  g.start_ = start;
  g.finalize();
  return g;
}

std::string Grammar::canonical_text() const {
  std::string out = "param";
  for (const Path &p : param_paths_) out += " " + p.str();
  out += "\nrestrict";
  for (const Path &p : restrictor_.paths()) out += " " + p.str();
  out += "\n";
  for (const Production &p : productions_) {
    out += "rule " + p.name + ": " + to_avm(p.rule) + "\n";
  }
  for (const auto &[word, entries] : lexicon_) {
    for (const LexicalEntry &e : entries) {
      out += "lex " + word + ": " + to_avm(e.sign) + "\n";
    }
  }
  return out;
}

std::string Grammar::content_hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_text())));
  return buf;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Grammar load_grammar(const std::filesystem::path &path) {
  return parse_grammar(read_file(path));
}

}  // namespace bagforge
