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

#ifndef BAGFORGE_DOMAIN_IO_H_
#define BAGFORGE_DOMAIN_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "bagforge/domains.h"
#include "bagforge/grammar.h"

namespace bagforge {

inline constexpr std::string_view kDomainsMagic = "bagforge-domains";
inline constexpr std::string_view kDomainsVersion = "v1";

// Both compiled domain sets of one grammar.
struct CompiledDomains {
  DomainSet inner;
  DomainSet outer;
};

CompiledDomains compile_domains(const Grammar &g);

// Writes `bagforge-domains v1 <hash>` followed by one merged triple per line,
// sorted, inner and outer sets together.
void save_domains(std::ostream &out, const CompiledDomains &d,
                  std::string_view grammar_hash);

// Reads a cache written by save_domains. Throws StaleCacheError when the
// hash differs from g.content_hash(), InputError on a version mismatch or a
// malformed line.
CompiledDomains load_domains(std::istream &in, const Grammar &g);

void save_domains_file(const std::filesystem::path &path,
                       const CompiledDomains &d, std::string_view hash);
CompiledDomains load_domains_file(const std::filesystem::path &path,
                                  const Grammar &g);

}  // namespace bagforge

#endif  // BAGFORGE_DOMAIN_IO_H_
