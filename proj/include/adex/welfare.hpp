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

#include <concepts>
#include <map>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/items.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"

namespace adex {

/// A welfare-maximizing allocation together with its exact welfare.
struct WelfareSolution {
  Allocation allocation;
  Rational welfare;
};

template <class V>
concept ValueProvider = requires(const V& v, ItemSet s, int j) {
  { v.value(s) } -> std::convertible_to<Rational>;
  { v.max_marginal(j) } -> std::convertible_to<Rational>;
};

/// Borrowed view of a Valuation, so the branch-and-bound engine can run on
/// plain bidder lists and on duplicated-item economies alike.
struct ValuationRef {
  const Valuation* v;
  Rational value(ItemSet s) const { return v->value(s); }
  Rational max_marginal(int j) const { return v->max_marginal(j); }
};

/// View of a valuation over an economy extended by a perfect-substitute
/// copy of one item: holding the copy is worth exactly as much as holding
/// the original, and holding both is worth no more than holding one.
struct DuplicatedItemView {
  const Valuation* base;
  int original;
  int copy_bit;

  ItemSet fold(ItemSet s) const {
    if (!s.contains(copy_bit)) return s;
    return s.without(copy_bit).with(original);
  }
  Rational value(ItemSet s) const { return base->value(fold(s)); }
  Rational max_marginal(int j) const {
    return base->max_marginal(j == copy_bit ? original : j);
  }
};

namespace detail {

template <ValueProvider V>
class WelfareSearch {
 public:
  WelfareSearch(ItemSet items, const std::vector<V>& providers)
      : providers_(providers), items_(items.items()), n_(static_cast<int>(providers.size())) {
    const int t = static_cast<int>(items_.size());
    // Additive upper bound: an unassigned item can contribute at most its
    // best max-marginal over all bidders.
    suffix_bound_.assign(static_cast<std::size_t>(t) + 1, Rational());
    for (int pos = t - 1; pos >= 0; --pos) {
      Rational best;
      for (const V& p : providers_) best = max(best, p.max_marginal(items_[pos]));
      suffix_bound_[pos] = suffix_bound_[pos + 1] + best;
    }
    sets_.assign(static_cast<std::size_t>(n_), ItemSet());
    values_.assign(static_cast<std::size_t>(n_), Rational());
    assign_.assign(static_cast<std::size_t>(t), n_);
    best_assign_ = assign_;
    best_welfare_ = Rational(-1);
  }

  /// Deterministic: items ascending, options tried bidder 0..n-1 then
  /// unallocated, first optimum found is kept. That makes the result the
  /// lexicographically smallest optimal assignment vector (unallocated
  /// encoded as n).
  void run() { dfs(0, Rational()); }

  Rational best_welfare() const { return best_welfare_; }

  Allocation best_allocation() const {
    std::map<int, ItemSet> out;
    for (int b = 0; b < n_; ++b) out[b] = ItemSet();
    for (std::size_t pos = 0; pos < items_.size(); ++pos) {
      const int b = best_assign_[pos];
      if (b < n_) out[b] = out[b].with(items_[pos]);
    }
    return Allocation(std::move(out));
  }

  const std::vector<int>& best_assignment() const { return best_assign_; }

 private:
  void dfs(int pos, const Rational& acc) {
    if (best_welfare_.sign() >= 0 && acc + suffix_bound_[pos] <= best_welfare_) return;
    if (pos == static_cast<int>(items_.size())) {
      if (acc > best_welfare_) {
        best_welfare_ = acc;
        best_assign_ = assign_;
      }
      return;
    }
    const int j = items_[pos];
    for (int b = 0; b < n_; ++b) {
      const ItemSet grown = sets_[b].with(j);
      Rational grown_value = providers_[b].value(grown);
      Rational delta = grown_value - values_[b];
      const ItemSet saved_set = sets_[b];
      Rational saved_value = values_[b];
      sets_[b] = grown;
      values_[b] = std::move(grown_value);
      assign_[pos] = b;
      dfs(pos + 1, acc + delta);
      sets_[b] = saved_set;
      values_[b] = std::move(saved_value);
    }
    assign_[pos] = n_;  // leave item unallocated
    dfs(pos + 1, acc);
  }

  const std::vector<V>& providers_;
  std::vector<int> items_;
  int n_;
  std::vector<Rational> suffix_bound_;
  std::vector<ItemSet> sets_;
  std::vector<Rational> values_;
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  Rational best_welfare_;
};

}  // namespace detail

/// Exact welfare maximization over any value providers via branch-and-bound
/// with the per-item max-marginal bound.
template <ValueProvider V>
WelfareSolution max_welfare_over(ItemSet items, const std::vector<V>& providers) {
  if (providers.empty()) return {Allocation(), Rational()};
  detail::WelfareSearch<V> search(items, providers);
  search.run();
  return {search.best_allocation(), search.best_welfare()};
}

/// The two-party allocation problem: find an allocation of `items` to the
/// bidders maximizing total value. Deterministic tie-break; bidders with no
/// items appear in the allocation with the empty set.
inline WelfareSolution max_welfare(ItemSet items, const std::vector<Valuation>& valuations) {
  std::vector<ValuationRef> refs;
  refs.reserve(valuations.size());
  for (const Valuation& v : valuations) refs.push_back(ValuationRef{&v});
  return max_welfare_over(items, refs);
}

}  // namespace adex
