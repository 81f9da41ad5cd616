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

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "adex/errors.hpp"
#include "adex/items.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"

namespace adex {

enum class ValuationKind { kExplicit, kUnitDemand, kAdditive, kOr };

/// One utility-maximizing set at given prices, plus the maximum utility.
/// Ties are broken towards the smallest bitmask, so demand queries are
/// deterministic and certificates reproducible.
struct DemandResult {
  ItemSet representative;
  Rational max_utility;
};

/// A bidder's monotone valuation over item subsets.
///
/// Four representations: an explicit table over 2^k subsets, unit-demand
/// (value of a set = max item value), additive (= sum of item values), and
/// OR-composition (= best split of the set among the children). All
/// variants enforce v(empty) = 0 and monotonicity at construction;
/// explicit tables are rejected with the violating pair of sets.
///
/// Instances are immutable after construction; the OR table is precomputed,
/// so all queries are safe to run concurrently.
class Valuation {
 public:
  /// OR tables cost 3^k rational operations per child to fill.
  static constexpr int kOrTableMaxItems = 12;

  static Valuation explicit_table(int num_items, std::vector<Rational> table) {
    if (num_items < 0 || num_items > ItemSet::kMaxItems) {
      throw SizeGuardError("explicit valuation: bad item count");
    }
    const std::size_t want = std::size_t{1} << num_items;
    if (table.size() != want) {
      throw ValidationError("explicit valuation: table has " + std::to_string(table.size()) +
                            " entries, expected " + std::to_string(want));
    }
    Valuation v;
    v.kind_ = ValuationKind::kExplicit;
    v.num_items_ = num_items;
    v.table_ = std::move(table);
    v.validate_monotone(v.table_, "explicit valuation");
    v.fill_max_marginals();
    return v;
  }

  static Valuation unit_demand(std::vector<Rational> values) {
    Valuation v;
    v.kind_ = ValuationKind::kUnitDemand;
    v.init_item_values(std::move(values), "unit-demand");
    return v;
  }

  static Valuation additive(std::vector<Rational> values) {
    Valuation v;
    v.kind_ = ValuationKind::kAdditive;
    v.init_item_values(std::move(values), "additive");
    return v;
  }

  static Valuation or_of(std::vector<Valuation> children) {
    if (children.empty()) throw ValidationError("or valuation: no children");
    const int k = children.front().num_items();
    for (const Valuation& c : children) {
      if (c.num_items() != k) {
        throw ValidationError("or valuation: children disagree on item count");
      }
    }
    if (k > kOrTableMaxItems) {
      throw SizeGuardError("or valuation: table limited to " +
                           std::to_string(kOrTableMaxItems) + " items");
    }
    Valuation v;
    v.kind_ = ValuationKind::kOr;
    v.num_items_ = k;
    // f_i(S) = max over T subset of S of f_{i-1}(S \ T) + v_i(T).
    const std::size_t size = std::size_t{1} << k;
    std::vector<Rational> table(size);
    for (std::uint64_t s = 0; s < size; ++s) {
      table[s] = children.front().value(ItemSet(s));
    }
    for (std::size_t i = 1; i < children.size(); ++i) {
      std::vector<Rational> next(size);
      for (std::uint64_t s = 0; s < size; ++s) {
        const ItemSet full(s);
        Rational best = table[s];  // child i takes nothing
        for_each_subset(full, [&](ItemSet t) {
          if (t.empty()) return;
          Rational cand = table[(full - t).bits()] + children[i].value(t);
          if (cand > best) best = cand;
        });
        next[s] = std::move(best);
      }
      table = std::move(next);
    }
    v.table_ = std::move(table);
    v.children_ = std::make_shared<std::vector<Valuation>>(std::move(children));
    v.fill_max_marginals();
    return v;
  }

  ValuationKind kind() const { return kind_; }
  int num_items() const { return num_items_; }

  /// v(S), exact. OR values come from the precomputed partition table.
  Rational value(ItemSet s) const {
    switch (kind_) {
      case ValuationKind::kExplicit:
      case ValuationKind::kOr:
        return table_[s.bits()];
      case ValuationKind::kUnitDemand: {
        Rational best;
        for (int j : s.items()) best = max(best, item_values_[static_cast<std::size_t>(j)]);
        return best;
      }
      case ValuationKind::kAdditive: {
        Rational total;
        for (int j : s.items()) total += item_values_[static_cast<std::size_t>(j)];
        return total;
      }
    }
    throw std::logic_error("unreachable");
  }

  /// max over U of v(U ∪ {j}) − v(U). An exact bound for branch-and-bound:
  /// no set can gain more than this from item j.
  const Rational& max_marginal(int item) const {
    if (kind_ == ValuationKind::kUnitDemand || kind_ == ValuationKind::kAdditive) {
      return item_values_[static_cast<std::size_t>(item)];
    }
    return max_marginals_[static_cast<std::size_t>(item)];
  }

  /// The demand representative at prices p: maximizes v(S) - p(S) over all
  /// S in the ground set, smallest bitmask among ties.
  DemandResult demand(const PriceVector& prices, ItemSet ground) const {
    DemandResult best{ItemSet(), Rational()};
    bool first = true;
    for_each_subset(ground, [&](ItemSet s) {
      Rational u = value(s) - prices.sum_over(s);
      if (first || u > best.max_utility) {
        best = {s, std::move(u)};
        first = false;
      }
    });
    return best;
  }

  DemandResult demand(const PriceVector& prices) const {
    return demand(prices, ItemSet::full(num_items_));
  }

  /// Every utility-maximizing subset of the ground set, ascending bitmask
  /// order. Exhaustive; exposed for desk-scale verification only.
  std::vector<ItemSet> demand_all(const PriceVector& prices, ItemSet ground) const {
    std::vector<ItemSet> out;
    Rational best;
    bool first = true;
    for_each_subset(ground, [&](ItemSet s) {
      Rational u = value(s) - prices.sum_over(s);
      if (first || u > best) {
        best = std::move(u);
        out.assign(1, s);
        first = false;
      } else if (u == best) {
        out.push_back(s);
      }
    });
    return out;
  }

  std::vector<ItemSet> demand_all(const PriceVector& prices) const {
    return demand_all(prices, ItemSet::full(num_items_));
  }

  const std::vector<Valuation>& children() const {
    if (kind_ != ValuationKind::kOr) throw std::logic_error("not an or valuation");
    return *children_;
  }

  const std::vector<Rational>& item_values() const {
    if (kind_ != ValuationKind::kUnitDemand && kind_ != ValuationKind::kAdditive) {
      throw std::logic_error("valuation has no per-item values");
    }
    return item_values_;
  }

 private:
  Valuation() = default;

  void init_item_values(std::vector<Rational> values, const char* what) {
    if (static_cast<int>(values.size()) > ItemSet::kMaxItems) {
      throw SizeGuardError(std::string(what) + " valuation: too many items");
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j].sign() < 0) {
        throw ValidationError(std::string(what) + " valuation: negative value for item " +
                              std::to_string(j));
      }
    }
    num_items_ = static_cast<int>(values.size());
    item_values_ = std::move(values);
  }

  void validate_monotone(const std::vector<Rational>& table, const char* what) const {
    if (table[0] != Rational(0)) {
      throw ValidationError(std::string(what) + ": v({}) must be 0, got " + table[0].str());
    }
    const std::uint64_t size = std::uint64_t{1} << num_items_;
    for (std::uint64_t s = 0; s < size; ++s) {
      for (int j = 0; j < num_items_; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (s & bit) continue;
        if (table[s] > table[s | bit]) {
          throw ValidationError(std::string(what) + ": not monotone, v(" + ItemSet(s).str() +
                                ") = " + table[s].str() + " > v(" + ItemSet(s | bit).str() +
                                ") = " + table[s | bit].str());
        }
      }
    }
  }

  void fill_max_marginals() {
    max_marginals_.assign(static_cast<std::size_t>(num_items_), Rational());
    const std::uint64_t size = std::uint64_t{1} << num_items_;
    for (int j = 0; j < num_items_; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      Rational best;
      for (std::uint64_t u = 0; u < size; ++u) {
        if (u & bit) continue;
        best = max(best, table_[u | bit] - table_[u]);
      }
      max_marginals_[static_cast<std::size_t>(j)] = std::move(best);
    }
  }

  ValuationKind kind_ = ValuationKind::kAdditive;
  int num_items_ = 0;
  std::vector<Rational> item_values_;            // unit-demand / additive
  std::vector<Rational> table_;                  // explicit / or (index = bitmask)
  std::vector<Rational> max_marginals_;          // explicit / or
  std::shared_ptr<const std::vector<Valuation>> children_;  // or
};

/// The OR-player over a list of bidder valuations: her value for S is the
/// best split of S among the bidders.
inline Valuation or_player(std::vector<Valuation> valuations) {
  return Valuation::or_of(std::move(valuations));
}

}  // namespace adex
