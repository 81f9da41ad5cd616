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
//
// Envy-free mediator semantics. A mediator offered a set S at central
// prices r simulates the local auction she would run: minimum envy-free
// prices >= r on S, an envy-free allocation maximizing her takings, prices
// extended by r off S. Her revenue for S is takings minus r(S) — but only
// if her bidders stay envy-free over the whole universe at the extended
// prices; otherwise the offer is rejected outright.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/gross_substitutes.hpp"
#include "adex/items.hpp"
#include "adex/parallel.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/reserves.hpp"
#include "adex/valuation.hpp"

namespace adex {

/// Outcome of one virtual auction. `revenue` is empty when the offer was
/// rejected (the global envy check failed, or no equilibrium exists on S);
/// a tagged rejection instead of a negative number keeps arithmetic away
/// from the sentinel.
struct VirtualAuctionOutcome {
  ItemSet offered;
  PriceVector prices;      // over the full universe; equals r off `offered`
  Allocation allocation;   // local bidder indices 0..n_i-1
  std::optional<Rational> revenue;

  bool rejected() const { return !revenue.has_value(); }
};

struct MediatorDemand {
  ItemSet representative;
  Rational revenue;
  VirtualAuctionOutcome local_outcome;
};

namespace detail {

/// Among allocations of `offered` that are envy-free at fixed prices,
/// pick the one maximizing the mediator's takings sum p(S_b); ties go to
/// the lexicographically smallest assignment vector. `seed` must be a
/// feasible (envy-free) allocation; branch-and-bound prunes against it.
class PaymentSearch {
 public:
  PaymentSearch(const std::vector<Valuation>& bidders, ItemSet offered, const PriceVector& prices,
                const Allocation& seed)
      : bidders_(bidders), items_(offered.items()), prices_(prices), n_(bidders.size()) {
    max_utility_.reserve(n_);
    for (const Valuation& v : bidders_) {
      max_utility_.push_back(v.demand(prices_, offered).max_utility);
    }
    suffix_.assign(items_.size() + 1, Rational());
    for (std::size_t t = items_.size(); t-- > 0;) {
      suffix_[t] = suffix_[t + 1] + prices_[items_[t]];
    }
    best_pay_ = Rational();
    for (const auto& [b, set] : seed.entries()) best_pay_ += prices_.sum_over(set);
    sets_.assign(n_, ItemSet());
    assign_.assign(items_.size(), static_cast<int>(n_));
    found_ = false;
  }

  Allocation run() {
    dfs(0, Rational());
    if (!found_) throw std::logic_error("payment search lost the seed allocation");
    std::map<int, ItemSet> out;
    for (std::size_t b = 0; b < n_; ++b) out[static_cast<int>(b)] = ItemSet();
    for (std::size_t t = 0; t < items_.size(); ++t) {
      if (best_assign_[t] < static_cast<int>(n_)) {
        out[best_assign_[t]] = out[best_assign_[t]].with(items_[t]);
      }
    }
    return Allocation(std::move(out));
  }

 private:
  bool improves(const Rational& pay) const {
    return pay > best_pay_ || (pay == best_pay_ && !found_);
  }

  void dfs(std::size_t pos, const Rational& pay) {
    const Rational limit = pay + suffix_[pos];
    if (limit < best_pay_ || (limit == best_pay_ && found_)) return;
    if (pos == items_.size()) {
      if (!improves(pay)) return;
      for (std::size_t b = 0; b < n_; ++b) {
        const Rational u = bidders_[b].value(sets_[b]) - prices_.sum_over(sets_[b]);
        if (u != max_utility_[b]) return;  // not a demanded set
      }
      best_pay_ = pay;
      best_assign_ = assign_;
      found_ = true;
      return;
    }
    const int j = items_[pos];
    for (std::size_t b = 0; b < n_; ++b) {
      assign_[pos] = static_cast<int>(b);
      sets_[b] = sets_[b].with(j);
      dfs(pos + 1, pay + prices_[j]);
      sets_[b] = sets_[b].without(j);
    }
    assign_[pos] = static_cast<int>(n_);
    dfs(pos + 1, pay);
  }

  const std::vector<Valuation>& bidders_;
  std::vector<int> items_;
  const PriceVector& prices_;
  std::size_t n_;
  std::vector<Rational> max_utility_;
  std::vector<Rational> suffix_;
  std::vector<ItemSet> sets_;
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  Rational best_pay_;
  bool found_;
};

}  // namespace detail

/// Definition of the EF-mediator, run literally: minimum WERP prices on the
/// offered set, takings-maximizing envy-free allocation, extension by r,
/// global envy check over the whole universe.
inline VirtualAuctionOutcome virtual_auction(int num_items,
                                             const std::vector<Valuation>& bidders,
                                             ItemSet offered, const PriceVector& reserves) {
  VirtualAuctionOutcome out;
  out.offered = offered;

  WerpEquilibrium lw;
  try {
    lw = solve_werp(num_items, offered, bidders, reserves);
  } catch (const NoWerpEquilibrium&) {
    // No equivalence guarantee without gross substitutes; the offer is
    // rejected rather than mispriced.
    out.prices = reserves;
    out.allocation = Allocation();
    out.revenue = std::nullopt;
    return out;
  }

  std::vector<Rational> extended(static_cast<std::size_t>(num_items));
  for (int j = 0; j < num_items; ++j) {
    extended[static_cast<std::size_t>(j)] = offered.contains(j) ? lw.prices[j] : reserves[j];
  }
  out.prices = PriceVector(std::move(extended));

  detail::PaymentSearch search(bidders, offered, out.prices, lw.allocation);
  out.allocation = search.run();

  // Global envy check: every bidder must still hold a demand representative
  // when all of Omega is on the table.
  bool globally_envy_free = true;
  const ItemSet universe = ItemSet::full(num_items);
  for (std::size_t b = 0; b < bidders.size(); ++b) {
    const ItemSet held = out.allocation.set_of(static_cast<int>(b));
    const Rational utility = bidders[b].value(held) - out.prices.sum_over(held);
    if (bidders[b].demand(out.prices, universe).max_utility > utility) {
      globally_envy_free = false;
      break;
    }
  }
  if (!globally_envy_free) {
    out.revenue = std::nullopt;
    return out;
  }
  Rational takings;
  for (const auto& [b, set] : out.allocation.entries()) takings += out.prices.sum_over(set);
  out.revenue = takings - reserves.sum_over(offered);
  return out;
}

/// One demand representative of the mediator, from a single virtual auction
/// on the whole universe: the set of allocated items is in the demand, and
/// its revenue is the maximum one.
inline MediatorDemand mediator_demand(int num_items, const std::vector<Valuation>& bidders,
                                      const PriceVector& reserves) {
  const ItemSet universe = ItemSet::full(num_items);
  const VirtualAuctionOutcome full = virtual_auction(num_items, bidders, universe, reserves);
  if (full.rejected()) {
    throw NoWerpEquilibrium(
        "mediator demand undefined: virtual auction on the full universe was rejected "
        "(non-gross-substitutes bidders)");
  }
  const ItemSet representative = full.allocation.union_all();
  VirtualAuctionOutcome local = virtual_auction(num_items, bidders, representative, reserves);
  Rational revenue;
  if (!local.rejected()) {
    revenue = *local.revenue;
  } else {
    throw NoWerpEquilibrium("mediator demand undefined: representative auction rejected");
  }
  return {representative, std::move(revenue), std::move(local)};
}

/// The definitional oracle: evaluates the revenue of all 2^k subsets and
/// returns the whole argmax family (ascending bitmask order). Rejected
/// offers never enter the family.
inline std::vector<ItemSet> mediator_demand_bruteforce(int num_items,
                                                       const std::vector<Valuation>& bidders,
                                                       const PriceVector& reserves,
                                                       int threads = 1) {
  const std::uint64_t count = std::uint64_t{1} << num_items;
  std::vector<std::optional<Rational>> revenue(count);
  parallel_for_index(count, threads, [&](std::size_t s) {
    revenue[s] =
        virtual_auction(num_items, bidders, ItemSet(static_cast<std::uint64_t>(s)), reserves)
            .revenue;
  });
  std::vector<ItemSet> family;
  std::optional<Rational> best;
  for (std::uint64_t s = 0; s < count; ++s) {
    if (!revenue[s].has_value()) continue;
    if (!best.has_value() || *revenue[s] > *best) {
      best = revenue[s];
      family.assign(1, ItemSet(s));
    } else if (*revenue[s] == *best) {
      family.push_back(ItemSet(s));
    }
  }
  return family;
}

/// All sets maximizing the OR-player's utility v_OR(S) - r(S), ascending.
inline std::vector<ItemSet> or_player_demand(int num_items, const std::vector<Valuation>& bidders,
                                             const PriceVector& reserves) {
  const ItemSet universe = ItemSet::full(num_items);
  if (bidders.empty()) {
    // Degenerate mediator: utility is -r(S).
    std::vector<ItemSet> family;
    for_each_subset(universe, [&](ItemSet s) {
      if (reserves.sum_over(s).is_zero()) family.push_back(s);
    });
    return family;
  }
  const Valuation combined = or_player(bidders);
  std::vector<ItemSet> family;
  Rational best;
  bool first = true;
  for_each_subset(universe, [&](ItemSet s) {
    Rational u = combined.value(s) - reserves.sum_over(s);
    if (first || u > best) {
      best = std::move(u);
      family.assign(1, s);
      first = false;
    } else if (u == best) {
      family.push_back(s);
    }
  });
  return family;
}

/// Side-by-side comparison of the EF-mediator demand (brute force over all
/// subsets) and the OR-player demand, plus the check that every demanded
/// set's virtual-auction allocation attains the OR value. They must agree
/// for gross-substitutes bidders; `inputs_gross_substitutes` flags inputs
/// for which disagreement is permitted.
struct OrEquivalenceReport {
  bool inputs_gross_substitutes = false;
  bool families_equal = false;
  bool allocations_or_optimal = false;
  std::optional<ItemSet> witness;  // a set in one demand but not the other,
                                   // or one whose allocation is suboptimal
  std::vector<ItemSet> mediator_family;
  std::vector<ItemSet> or_family;

  bool passed() const { return families_equal && allocations_or_optimal; }
};

inline OrEquivalenceReport check_or_equivalence(int num_items,
                                                const std::vector<Valuation>& bidders,
                                                const PriceVector& reserves, int threads = 1) {
  OrEquivalenceReport report;
  report.inputs_gross_substitutes = true;
  for (const Valuation& v : bidders) {
    if (!is_gross_substitutes(v, /*sweep_pair_budget=*/0)) {
      report.inputs_gross_substitutes = false;
      break;
    }
  }

  report.mediator_family = mediator_demand_bruteforce(num_items, bidders, reserves, threads);
  report.or_family = or_player_demand(num_items, bidders, reserves);
  report.families_equal = report.mediator_family == report.or_family;
  if (!report.families_equal) {
    // first set present in exactly one family, ascending
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < report.mediator_family.size() && b < report.or_family.size() &&
           report.mediator_family[a] == report.or_family[b]) {
      ++a;
      ++b;
    }
    if (a < report.mediator_family.size()) {
      report.witness = report.mediator_family[a];
    } else if (b < report.or_family.size()) {
      report.witness = report.or_family[b];
    }
  }

  // For every demanded set, the virtual-auction allocation must attain the
  // OR-player's value: sum of bidder values == v_OR(S).
  report.allocations_or_optimal = true;
  if (!bidders.empty()) {
    const Valuation combined = or_player(bidders);
    for (const ItemSet& s : report.mediator_family) {
      const VirtualAuctionOutcome outcome = virtual_auction(num_items, bidders, s, reserves);
      if (outcome.rejected()) {
        report.allocations_or_optimal = false;
        report.witness = s;
        break;
      }
      Rational total;
      for (const auto& [b, set] : outcome.allocation.entries()) {
        total += bidders[static_cast<std::size_t>(b)].value(set);
      }
      if (total != combined.value(s)) {
        report.allocations_or_optimal = false;
        report.witness = s;
        break;
      }
    }
  }
  return report;
}

}  // namespace adex
