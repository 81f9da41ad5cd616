#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Adex Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "adex/errors.hpp"

namespace adex {

/// A subset of the item universe as a machine-word bitmask. The engine is
/// desk-scale: at most 62 items, so that every subset fits in a
/// uint64_t and exhaustive sweeps over 2^k subsets stay cheap.
class ItemSet {
 public:
  static constexpr int kMaxItems = 62;

  constexpr ItemSet() : bits_(0) {}
  constexpr explicit ItemSet(std::uint64_t bits) : bits_(bits) {}

  static ItemSet empty_set() { return ItemSet(0); }

  static ItemSet full(int num_items) {
    check_index_range(num_items);
    if (num_items == 0) return ItemSet(0);
    return ItemSet((std::uint64_t{1} << num_items) - 1);
  }

  static ItemSet single(int item) {
    check_index_range(item + 1);
    return ItemSet(std::uint64_t{1} << item);
  }

  static ItemSet of(std::initializer_list<int> items) {
    ItemSet s;
    for (int j : items) s = s.with(j);
    return s;
  }

  static ItemSet from_indices(const std::vector<int>& items) {
    ItemSet s;
    for (int j : items) s = s.with(j);
    return s;
  }

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int count() const { return std::popcount(bits_); }

  bool contains(int item) const { return (bits_ >> item) & 1u; }

  ItemSet with(int item) const {
    check_index_range(item + 1);
    return ItemSet(bits_ | (std::uint64_t{1} << item));
  }
  ItemSet without(int item) const {
    check_index_range(item + 1);
    return ItemSet(bits_ & ~(std::uint64_t{1} << item));
  }

  bool subset_of(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }

  int lowest() const { return std::countr_zero(bits_); }   // undefined on empty
  int highest() const { return 63 - std::countl_zero(bits_); }

  std::vector<int> items() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (int j : items()) {
      if (!first) out += ",";
      out += std::to_string(j);
      first = false;
    }
    return out + "}";
  }

  friend ItemSet operator|(ItemSet a, ItemSet b) { return ItemSet(a.bits_ | b.bits_); }
  friend ItemSet operator&(ItemSet a, ItemSet b) { return ItemSet(a.bits_ & b.bits_); }
  friend ItemSet operator-(ItemSet a, ItemSet b) { return ItemSet(a.bits_ & ~b.bits_); }
  friend bool operator==(ItemSet a, ItemSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(ItemSet a, ItemSet b) { return a.bits_ != b.bits_; }
  friend bool operator<(ItemSet a, ItemSet b) { return a.bits_ < b.bits_; }

 private:
  static void check_index_range(int needed) {
    if (needed < 0 || needed > kMaxItems) {
      throw SizeGuardError("item universe limited to " + std::to_string(kMaxItems) + " items");
    }
  }

  std::uint64_t bits_;
};

/// Enumerates all submasks of `ground` in ascending bitmask order, starting
/// with the empty set. Ascending order is what gives the engine its
/// smallest-bitmask tie-breaking everywhere.
template <class F>
void for_each_subset(ItemSet ground, F&& fn) {
  const std::uint64_t g = ground.bits();
  std::uint64_t t = 0;
  while (true) {
    fn(ItemSet(t));
    if (t == g) break;
    t = (t - g) & g;
  }
}

}  // namespace adex
