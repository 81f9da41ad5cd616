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
// Brute-force and LP oracles. Everything in this header is deliberately
// definitional: exhaustive enumeration where the definition enumerates, an
// exact simplex where the definition minimizes. Solver results elsewhere in
// the engine are checked against these, never the other way around.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/items.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/simplex.hpp"
#include "adex/valuation.hpp"
#include "adex/welfare.hpp"

namespace adex {

/// Who envies, what he holds, and a strictly better set as witness.
struct EnvyReport {
  struct Entry {
    int bidder;
    ItemSet current;
    Rational utility;
    ItemSet better;
    Rational better_utility;
  };
  std::vector<Entry> envious;

  bool envy_free() const { return envious.empty(); }
};

/// Exhaustive envy check of an allocation at prices p over all subsets of
/// `ground`. Ground = the mediator's set gives the local check, ground =
/// the full universe the global one.
inline EnvyReport check_envy_free(const std::vector<Valuation>& valuations,
                                  const Allocation& allocation, const PriceVector& prices,
                                  ItemSet ground) {
  EnvyReport report;
  for (std::size_t b = 0; b < valuations.size(); ++b) {
    const ItemSet held = allocation.set_of(static_cast<int>(b));
    const Rational utility = valuations[b].value(held) - prices.sum_over(held);
    const DemandResult best = valuations[b].demand(prices, ground);
    if (best.max_utility > utility) {
      report.envious.push_back(
          {static_cast<int>(b), held, utility, best.representative, best.max_utility});
    }
  }
  return report;
}

namespace detail {

constexpr std::uint64_t kBruteAssignmentBudget = 40'000'000;

inline void check_brute_budget(std::size_t options, int positions) {
  std::uint64_t total = 1;
  for (int t = 0; t < positions; ++t) {
    total *= options;
    if (total > kBruteAssignmentBudget) {
      throw SizeGuardError("brute-force enumeration too large: > " +
                           std::to_string(kBruteAssignmentBudget) + " assignments");
    }
  }
}

}  // namespace detail

/// Exhaustive max over all (n+1)^k item-to-bidder assignments, smallest
/// assignment vector first. The welfare oracle.
inline WelfareSolution brute_welfare_solution(ItemSet items,
                                              const std::vector<Valuation>& valuations) {
  const std::vector<int> pos = items.items();
  const std::size_t n = valuations.size();
  detail::check_brute_budget(n + 1, static_cast<int>(pos.size()));

  std::vector<std::size_t> assign(pos.size(), 0);  // 0..n-1 bidder, n unallocated
  std::vector<ItemSet> best_sets(n);
  Rational best(-1);
  while (true) {
    std::vector<ItemSet> sets(n);
    for (std::size_t t = 0; t < pos.size(); ++t) {
      if (assign[t] < n) sets[assign[t]] = sets[assign[t]].with(pos[t]);
    }
    Rational welfare;
    for (std::size_t b = 0; b < n; ++b) welfare += valuations[b].value(sets[b]);
    if (welfare > best) {
      best = std::move(welfare);
      best_sets = sets;
    }
    // odometer with the first position most significant, so assignment
    // vectors come out in ascending lexicographic order
    std::size_t t = pos.size();
    bool overflow = true;
    while (t > 0) {
      --t;
      if (++assign[t] <= n) {
        overflow = false;
        break;
      }
      assign[t] = 0;
    }
    if (overflow) break;
  }

  std::map<int, ItemSet> out;
  for (std::size_t b = 0; b < n; ++b) out[static_cast<int>(b)] = best_sets[b];
  return {Allocation(std::move(out)), best};
}

inline Rational brute_welfare(ItemSet items, const std::vector<Valuation>& valuations) {
  return brute_welfare_solution(items, valuations).welfare;
}

/// Componentwise-least prices >= r at which every bidder demands his
/// assigned set, with unallocated items pinned to their reserve. Solved by
/// row generation over the exact simplex: the 2^k envy constraints per
/// bidder enter lazily, most violated first.
///
/// Requires `allocation` to maximize total value plus reserves of unsold
/// items over subsets of `items`; throws InfeasibleLp when no such prices
/// exist (then the allocation is not supportable).
inline PriceVector min_price_lp(ItemSet items, const std::vector<Valuation>& valuations,
                                const Allocation& allocation, const PriceVector& reserves) {
  const int k = reserves.size();
  const ItemSet sold = allocation.union_all();
  if (!sold.subset_of(items)) throw ValidationError("allocation outside the ground set");

  const std::vector<int> free_items = sold.items();
  std::map<int, std::size_t> var_of_item;
  for (std::size_t t = 0; t < free_items.size(); ++t) var_of_item[free_items[t]] = t;

  // prices: p_j = q_{var(j)} + r_j for sold items, r_j otherwise
  auto current_prices = [&](const std::vector<Rational>& q) {
    std::vector<Rational> p(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      if (items.contains(j)) p[static_cast<std::size_t>(j)] = reserves[j];
    }
    for (std::size_t t = 0; t < free_items.size(); ++t) {
      p[static_cast<std::size_t>(free_items[t])] += q[t];
    }
    return PriceVector(std::move(p));
  };

  std::vector<Rational> objective(free_items.size(), Rational(1));
  std::vector<LpRow> rows;
  std::vector<Rational> q(free_items.size(), Rational(0));

  const std::size_t max_rounds =
      valuations.size() * (std::size_t{1} << items.count()) + 2;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const PriceVector p = current_prices(q);
    // most violated envy constraint per bidder
    bool added = false;
    for (std::size_t b = 0; b < valuations.size(); ++b) {
      const ItemSet held = allocation.set_of(static_cast<int>(b));
      const Rational u_held = valuations[b].value(held) - p.sum_over(held);
      const DemandResult want = valuations[b].demand(p, items);
      if (want.max_utility <= u_held) continue;
      // v(T) - p(T) <= v(A) - p(A)  becomes  q(T \ A) - q(A \ T) >= rhs
      const ItemSet t_set = want.representative;
      LpRow row;
      row.coeffs.assign(free_items.size(), Rational(0));
      row.relation = LpRelation::kGreaterEq;
      row.rhs = valuations[b].value(t_set) - valuations[b].value(held);
      for (int j : (t_set - held).items()) {
        auto it = var_of_item.find(j);
        if (it != var_of_item.end()) {
          row.coeffs[it->second] += Rational(1);
          row.rhs -= reserves[j];
        } else {
          row.rhs -= reserves[j];  // fixed at reserve
        }
      }
      for (int j : (held - t_set).items()) {
        row.coeffs[var_of_item.at(j)] -= Rational(1);
        row.rhs += reserves[j];
      }
      bool all_zero = true;
      for (const Rational& c : row.coeffs) {
        if (!c.is_zero()) all_zero = false;
      }
      if (all_zero) {
        // No price can fix this bidder: the allocation is not supportable.
        throw InfeasibleLp("bidder " + std::to_string(b) + " prefers " + t_set.str() +
                           " over " + held.str() + " at every price >= reserves");
      }
      rows.push_back(std::move(row));
      added = true;
    }
    if (!added) return current_prices(q);

    LpResult lp = SimplexSolver::minimize(objective, rows);
    if (!lp.feasible) {
      throw InfeasibleLp("envy-free price polytope above reserves is empty");
    }
    q = std::move(lp.x);
  }
  throw std::logic_error("min_price_lp failed to converge");
}

/// Minimum envy-free prices >= r on `ground`: the authoritative value for
/// every virtual-auction price in tests. Fixes a brute-force optimal
/// allocation of the economy augmented with the reserve-price additive
/// player, then lets the LP minimize.
inline PriceVector min_ef_price_oracle(const std::vector<Valuation>& valuations,
                                       const PriceVector& reserves, ItemSet ground) {
  std::vector<Valuation> augmented = valuations;
  augmented.push_back(Valuation::additive(reserves.entries()));
  const WelfareSolution ws = brute_welfare_solution(ground, augmented);
  return min_price_lp(ground, augmented, ws.allocation, reserves);
}

/// f_{b,q}(S): how many items of S bidder b needs in every envy-free
/// allocation at prices q.
inline int requirement_function(const Valuation& v, const PriceVector& q, ItemSet s) {
  int best = s.count() + 1;
  for (const ItemSet& d : v.demand_all(q)) {
    best = std::min(best, (d & s).count());
  }
  return best;
}

/// Hall-type certificate: if the bidders jointly require more items of S
/// than S has, no envy-free allocation exists at q.
inline bool is_over_demanded(const std::vector<Valuation>& valuations, const PriceVector& q,
                             ItemSet s) {
  int total = 0;
  for (const Valuation& v : valuations) total += requirement_function(v, q, s);
  return total > s.count();
}

}  // namespace adex
