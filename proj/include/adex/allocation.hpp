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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adex/errors.hpp"
#include "adex/items.hpp"

namespace adex {

/// A partition of a subset of the items among participants (bidders or
/// mediators). Sets must be pairwise disjoint; overlap is rejected at
/// construction, never repaired. Items may stay unallocated, and a
/// participant absent from the map holds the empty set.
class Allocation {
 public:
  Allocation() = default;

  explicit Allocation(std::map<int, ItemSet> assigned) : assigned_(std::move(assigned)) {
    ItemSet seen;
    for (const auto& [id, set] : assigned_) {
      if (!(seen & set).empty()) {
        throw ValidationError("allocation overlap: participant " + std::to_string(id) +
                              " intersects earlier sets on " + (seen & set).str());
      }
      seen = seen | set;
    }
  }

  static Allocation empty_allocation() { return Allocation(); }

  ItemSet set_of(int id) const {
    auto it = assigned_.find(id);
    return it == assigned_.end() ? ItemSet() : it->second;
  }

  ItemSet union_all() const {
    ItemSet u;
    for (const auto& [id, set] : assigned_) u = u | set;
    return u;
  }

  const std::map<int, ItemSet>& entries() const { return assigned_; }

  std::string str() const {
    std::string out = "[";
    bool first = true;
    for (const auto& [id, set] : assigned_) {
      if (!first) out += ", ";
      out += std::to_string(id) + "->" + set.str();
      first = false;
    }
    return out + "]";
  }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    // Participants holding the empty set are equivalent to absent ones.
    auto ia = a.assigned_.begin();
    auto ib = b.assigned_.begin();
    while (ia != a.assigned_.end() || ib != b.assigned_.end()) {
      while (ia != a.assigned_.end() && ia->second.empty()) ++ia;
      while (ib != b.assigned_.end() && ib->second.empty()) ++ib;
      if (ia == a.assigned_.end() || ib == b.assigned_.end()) {
        return ia == a.assigned_.end() && ib == b.assigned_.end();
      }
      if (ia->first != ib->first || ia->second != ib->second) return false;
      ++ia;
      ++ib;
    }
    return true;
  }
  friend bool operator!=(const Allocation& a, const Allocation& b) { return !(a == b); }

 private:
  std::map<int, ItemSet> assigned_;
};

}  // namespace adex
