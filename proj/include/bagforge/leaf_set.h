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

#ifndef BAGFORGE_LEAF_SET_H_
#define BAGFORGE_LEAF_SET_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>

namespace bagforge {

// Set of bag positions covered by a chart edge. Bags are limited to 64
// elements.
class LeafSet {
 public:
  static constexpr size_t kMaxPositions = 64;

  LeafSet() = default;
  static LeafSet single(size_t position) {
    return LeafSet(uint64_t{1} << position);
  }
  static LeafSet all(size_t n) {
    return LeafSet(n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
  }

  bool contains(size_t position) const { return bits_ >> position & 1; }
  bool empty() const { return bits_ == 0; }
  size_t count() const { return static_cast<size_t>(std::popcount(bits_)); }
  bool disjoint(LeafSet other) const { return (bits_ & other.bits_) == 0; }
  uint64_t bits() const { return bits_; }

  LeafSet operator|(LeafSet other) const { return LeafSet(bits_ | other.bits_); }
  bool operator==(const LeafSet &other) const = default;

  // One character per position, position 0 first: "1100".
  std::string str(size_t n) const {
    std::string out(n, '0');
    for (size_t i = 0; i < n; ++i) {
      if (contains(i)) out[i] = '1';
    }
    return out;
  }

 private:
  explicit LeafSet(uint64_t bits) : bits_(bits) {}
  uint64_t bits_ = 0;
};

}  // namespace bagforge

#endif  // BAGFORGE_LEAF_SET_H_
