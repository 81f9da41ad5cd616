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

#include <string>
#include <utility>
#include <vector>

#include "adex/errors.hpp"
#include "adex/items.hpp"
#include "adex/valuation.hpp"

namespace adex {

struct Bidder {
  int id;
  Valuation valuation;
};

struct MediatorGroup {
  int id;
  std::vector<int> bidder_ids;
};

/// Items, bidders with valuations, and the bidder-to-mediator assignment.
/// Ids are dense: bidders 0..n-1 and mediators 0..m-1 in order, and the
/// mediator groups partition the bidder set — every bidder is connected to
/// exactly one mediator. Monotonicity and v(empty)=0 are enforced by the
/// Valuation constructors.
class Instance {
 public:
  Instance(int num_items, std::vector<Bidder> bidders, std::vector<MediatorGroup> mediators)
      : num_items_(num_items), bidders_(std::move(bidders)), mediators_(std::move(mediators)) {
    if (num_items_ < 0 || num_items_ > ItemSet::kMaxItems) {
      throw ValidationError("instance: item count out of range");
    }
    if (bidders_.empty()) throw ValidationError("instance: no bidders");
    if (mediators_.empty()) throw ValidationError("instance: no mediators");
    for (std::size_t b = 0; b < bidders_.size(); ++b) {
      if (bidders_[b].id != static_cast<int>(b)) {
        throw ValidationError("instance: bidder ids must be dense 0..n-1 in order");
      }
      if (bidders_[b].valuation.num_items() != num_items_) {
        throw ValidationError("instance: bidder " + std::to_string(b) +
                              " valuation covers " +
                              std::to_string(bidders_[b].valuation.num_items()) +
                              " items, instance has " + std::to_string(num_items_));
      }
    }
    std::vector<int> owner(bidders_.size(), -1);
    for (std::size_t m = 0; m < mediators_.size(); ++m) {
      if (mediators_[m].id != static_cast<int>(m)) {
        throw ValidationError("instance: mediator ids must be dense 0..m-1 in order");
      }
      if (mediators_[m].bidder_ids.empty()) {
        throw ValidationError("instance: mediator " + std::to_string(m) + " has no bidders");
      }
      for (int b : mediators_[m].bidder_ids) {
        if (b < 0 || b >= static_cast<int>(bidders_.size())) {
          throw ValidationError("instance: mediator " + std::to_string(m) +
                                " references unknown bidder " + std::to_string(b));
        }
        if (owner[static_cast<std::size_t>(b)] != -1) {
          throw ValidationError("instance: bidder " + std::to_string(b) +
                                " connected to two mediators");
        }
        owner[static_cast<std::size_t>(b)] = static_cast<int>(m);
      }
    }
    for (std::size_t b = 0; b < owner.size(); ++b) {
      if (owner[b] == -1) {
        throw ValidationError("instance: bidder " + std::to_string(b) +
                              " connected to no mediator");
      }
    }
    mediator_of_ = std::move(owner);
  }

  int num_items() const { return num_items_; }
  ItemSet universe() const { return ItemSet::full(num_items_); }
  const std::vector<Bidder>& bidders() const { return bidders_; }
  const std::vector<MediatorGroup>& mediators() const { return mediators_; }
  int num_bidders() const { return static_cast<int>(bidders_.size()); }
  int num_mediators() const { return static_cast<int>(mediators_.size()); }
  int mediator_of(int bidder) const { return mediator_of_[static_cast<std::size_t>(bidder)]; }

  std::vector<Valuation> all_valuations() const {
    std::vector<Valuation> out;
    out.reserve(bidders_.size());
    for (const Bidder& b : bidders_) out.push_back(b.valuation);
    return out;
  }

  std::vector<Valuation> member_valuations(int mediator) const {
    std::vector<Valuation> out;
    for (int b : mediators_[static_cast<std::size_t>(mediator)].bidder_ids) {
      out.push_back(bidders_[static_cast<std::size_t>(b)].valuation);
    }
    return out;
  }

 private:
  int num_items_;
  std::vector<Bidder> bidders_;
  std::vector<MediatorGroup> mediators_;
  std::vector<int> mediator_of_;
};

}  // namespace adex
