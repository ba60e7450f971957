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

#include "bagforge/domain_io.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bagforge/avm_text.h"
#include "bagforge/errors.h"

namespace bagforge {

CompiledDomains compile_domains(const Grammar &g) {
  DomainSet inner = compute_inner(g);
  DomainSet outer = compute_outer(g, inner);
  return {std::move(inner), std::move(outer)};
}

void save_domains(std::ostream &out, const CompiledDomains &d,
                  std::string_view grammar_hash) {
  out << kDomainsMagic << ' ' << kDomainsVersion << ' ' << grammar_hash
      << '\n';
  std::vector<std::string> lines = domain_lines(d.inner, false);
  std::vector<std::string> outer = domain_lines(d.outer, false);
  lines.insert(lines.end(), outer.begin(), outer.end());
  std::sort(lines.begin(), lines.end());
  for (const std::string &line : lines) out << line << '\n';
}

namespace {

AbstractSign read_abstract(std::string_view text, const Restrictor &r,
                           int line) {
  AbstractSign s;
  try {
    s = restrict(parse_sign(text), r);
  } catch (const std::exception &e) {
    throw ParseError(line, std::string("bad sign in domain cache: ") +
                               e.what());
  }
  if (s.str() != text) {
    throw ParseError(line, "non-canonical sign '" + std::string(text) +
                               "' in domain cache");
  }
  return s;
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

CompiledDomains load_domains(std::istream &in, const Grammar &g) {
  std::string header;
  if (!std::getline(in, header)) throw InputError("empty domain cache");
  std::istringstream hs(header);
  std::string magic, version, hash;
  hs >> magic >> version >> hash;
  if (magic != kDomainsMagic) throw InputError("not a domain cache file");
  if (version != kDomainsVersion) {
    throw InputError("domain cache version " + version + " is not supported");
  }
  if (hash != g.content_hash()) {
    throw StaleCacheError("stale domain cache: compiled for grammar " + hash +
                          ", current grammar is " + g.content_hash());
  }

  DomainSet::Table inner, outer;
  std::string raw;
  int line = 1;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = trim_view(raw);
    if (text.empty()) continue;
    size_t sp = text.find(' ');
    if (sp == std::string_view::npos) throw ParseError(line, "truncated line");
    std::string_view kind = text.substr(0, sp);
    std::string_view rest = text.substr(sp + 1);
    size_t a = rest.find(" :: ");
    size_t b = a == std::string_view::npos ? a : rest.find(" :: ", a + 4);
    if (b == std::string_view::npos) throw ParseError(line, "expected ' :: '");
    AbstractSign sign = read_abstract(rest.substr(0, a), g.restrictor(), line);
    AbstractSign lex =
        read_abstract(rest.substr(a + 4, b - a - 4), g.restrictor(), line);
    Binds binds;
    std::string_view list = rest.substr(b + 4);
    while (!list.empty()) {
      size_t comma = list.find(',');
      std::string_view item = trim_view(list.substr(0, comma));
      size_t tilde = item.find('~');
      if (tilde == std::string_view::npos) {
        throw ParseError(line, "bind pair without '~'");
      }
      try {
        binds.insert({Path::parse(item.substr(0, tilde)),
                      Path::parse(item.substr(tilde + 1))});
      } catch (const std::invalid_argument &e) {
        throw ParseError(line, e.what());
      }
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    if (binds.empty()) throw ParseError(line, "triple with empty binds");
    DomainSet::Table *table;
    if (kind == "inner") {
      table = &inner;
    } else if (kind == "outer") {
      table = &outer;
    } else {
      throw ParseError(line, "unknown domain kind '" + std::string(kind) + "'");
    }
    Binds &slot = (*table)[sign][lex];
    slot.insert(binds.begin(), binds.end());
  }
  return {DomainSet(DomainKind::kInner, g.restrictor(), std::move(inner)),
          DomainSet(DomainKind::kOuter, g.restrictor(), std::move(outer))};
}

void save_domains_file(const std::filesystem::path &path,
                       const CompiledDomains &d, std::string_view hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  save_domains(out, d, hash);
  if (!out) throw InputError("write failed: " + path.string());
}

CompiledDomains load_domains_file(const std::filesystem::path &path,
                                  const Grammar &g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  return load_domains(in, g);
}

}  // namespace bagforge
