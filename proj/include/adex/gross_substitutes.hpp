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
// Gross-substitutes certification. The definitional quantifier ranges over
// all real price pairs, so the certificate here is the finite algebraic
// characterization (submodularity plus the three-item exchange condition),
// cross-validated against the definition on a finite grid of candidate
// prices built from the valuation's pairwise value differences — the only
// prices at which demand sets can change — and their midpoints.
//
// Raising prices one coordinate at a time is enough: a chain of single
// raises preserves every item whose price never moved, so the single-raise
// form of the definition implies the general one.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adex/items.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"

namespace adex {

/// A definitional violation: at p2 >= p1 no demanded set keeps every item
/// of `demanded_at_p1` whose price did not move.
struct GsWitness {
  PriceVector p1;
  PriceVector p2;
  ItemSet demanded_at_p1;
};

struct GsCheckResult {
  bool is_gs = false;
  std::optional<GsWitness> witness;

  explicit operator bool() const { return is_gs; }
};

namespace detail {

/// True iff the single-raise demand-preservation property holds for this
/// particular (p1, p2) pair.
inline bool gs_pair_holds(const Valuation& v, const PriceVector& p1, const PriceVector& p2,
                          ItemSet* bad_d1) {
  const ItemSet universe = ItemSet::full(v.num_items());
  ItemSet unchanged;
  for (int j = 0; j < v.num_items(); ++j) {
    if (p1[j] == p2[j]) unchanged = unchanged.with(j);
  }
  const std::vector<ItemSet> demand2 = v.demand_all(p2, universe);
  for (const ItemSet& d1 : v.demand_all(p1, universe)) {
    const ItemSet keep = d1 & unchanged;
    bool preserved = false;
    for (const ItemSet& d2 : demand2) {
      if (keep.subset_of(d2)) {
        preserved = true;
        break;
      }
    }
    if (!preserved) {
      if (bad_d1) *bad_d1 = d1;
      return false;
    }
  }
  return true;
}

/// Candidate price levels: 0, all non-negative pairwise differences of
/// values, midpoints between neighbours, and a level above every value.
inline std::vector<Rational> gs_price_grid(const Valuation& v) {
  const std::uint64_t size = std::uint64_t{1} << v.num_items();
  std::vector<Rational> values;
  values.reserve(size);
  for (std::uint64_t s = 0; s < size; ++s) values.push_back(v.value(ItemSet(s)));

  std::vector<Rational> levels;
  levels.push_back(Rational(0));
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = 0; b < values.size(); ++b) {
      Rational d = values[a] - values[b];
      if (d.sign() > 0) levels.push_back(std::move(d));
    }
  }
  Rational top;
  for (const Rational& val : values) top = max(top, val);
  levels.push_back(top + Rational(1));

  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<Rational> out;
  out.reserve(2 * levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out.push_back(levels[i]);
    if (i + 1 < levels.size()) {
      out.push_back((levels[i] + levels[i + 1]) / Rational(2));
    }
  }
  return out;
}

/// Definitional sweep over the candidate grid, single-coordinate raises.
/// Base price vectors are visited with an even stride; the walk is
/// exhaustive whenever the number of raise pairs fits the budget, and a
/// deterministic evenly-spread subsample otherwise.
inline std::optional<GsWitness> gs_definitional_sweep(const Valuation& v,
                                                      std::uint64_t pair_budget) {
  const int k = v.num_items();
  if (k == 0 || pair_budget == 0) return std::nullopt;
  const std::vector<Rational> grid = gs_price_grid(v);
  const std::uint64_t g = grid.size();

  std::uint64_t bases = 1;  // g^k, saturating
  for (int j = 0; j < k; ++j) {
    if (bases > (std::uint64_t{1} << 62) / g) {
      bases = std::uint64_t{1} << 62;
      break;
    }
    bases *= g;
  }
  const std::uint64_t pairs_per_base = static_cast<std::uint64_t>(k) * g;
  const std::uint64_t base_budget = std::max<std::uint64_t>(1, pair_budget / pairs_per_base);
  const std::uint64_t stride = bases <= base_budget ? 1 : bases / base_budget;

  std::vector<std::size_t> digits(static_cast<std::size_t>(k));
  for (std::uint64_t point = 0; point < bases; point += stride) {
    std::uint64_t rest = point;
    std::vector<Rational> entries(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      digits[static_cast<std::size_t>(j)] = static_cast<std::size_t>(rest % g);
      rest /= g;
      entries[static_cast<std::size_t>(j)] = grid[digits[static_cast<std::size_t>(j)]];
    }
    const PriceVector p1(std::move(entries));
    for (int c = 0; c < k; ++c) {
      for (std::size_t lvl = digits[static_cast<std::size_t>(c)] + 1; lvl < g; ++lvl) {
        PriceVector p2 = p1.with(c, grid[lvl]);
        ItemSet bad;
        if (!gs_pair_holds(v, p1, p2, &bad)) {
          return GsWitness{p1, std::move(p2), bad};
        }
      }
    }
  }
  return std::nullopt;
}

/// Builds a definitional witness from a failed submodularity inequality
/// v(S+i) - v(S) < v(S+i+j) - v(S+j): price i strictly between the two
/// marginals, j free, everything else prohibitive. At p1 the bidder wants
/// {i,j} together; raising j's price makes every demanded set drop i even
/// though i's price never moved.
inline GsWitness submodularity_witness(const Valuation& v, ItemSet s, int i, int j) {
  const int k = v.num_items();
  const Rational lo = v.value(s.with(i)) - v.value(s);
  const Rational hi = v.value(s.with(j).with(i)) - v.value(s.with(j));
  const Rational mid = (lo + hi) / Rational(2);
  Rational prohibitive;
  const std::uint64_t size = std::uint64_t{1} << k;
  for (std::uint64_t t = 0; t < size; ++t) prohibitive = max(prohibitive, v.value(ItemSet(t)));
  prohibitive += Rational(1);

  std::vector<Rational> p(static_cast<std::size_t>(k), prohibitive);
  for (int x : s.items()) p[static_cast<std::size_t>(x)] = Rational(0);
  p[static_cast<std::size_t>(j)] = Rational(0);
  p[static_cast<std::size_t>(i)] = mid;
  PriceVector p1(std::move(p));
  PriceVector p2 = p1.with(j, prohibitive);
  return GsWitness{std::move(p1), std::move(p2), s.with(i).with(j)};
}

}  // namespace detail

/// Certifies the gross-substitutes property of a monotone valuation.
///
/// Returns true iff v is submodular and satisfies the exchange condition
///   v(S+i+j) + v(S+l) <= max(v(S+i+l) + v(S+j), v(S+j+l) + v(S+i))
/// for all S and distinct i, j, l outside S. On failure the result carries
/// a concrete (p1, p2, D1) violating the definition. A passing valuation is
/// additionally cross-validated against the definition on the candidate
/// price grid; definitional evidence wins any disagreement.
inline GsCheckResult is_gross_substitutes(const Valuation& v,
                                          std::uint64_t sweep_pair_budget = 600) {
  const int k = v.num_items();
  const std::uint64_t size = std::uint64_t{1} << k;

  // Submodularity.
  for (std::uint64_t s = 0; s < size; ++s) {
    const ItemSet base(s);
    for (int i = 0; i < k; ++i) {
      if (base.contains(i)) continue;
      for (int j = i + 1; j < k; ++j) {
        if (base.contains(j)) continue;
        const Rational left = v.value(base.with(i)) + v.value(base.with(j));
        const Rational right = v.value(base.with(i).with(j)) + v.value(base);
        if (left < right) {
          GsCheckResult out;
          out.is_gs = false;
          if (v.value(base.with(i)) - v.value(base) <
              v.value(base.with(i).with(j)) - v.value(base.with(j))) {
            out.witness = detail::submodularity_witness(v, base, i, j);
          } else {
            out.witness = detail::submodularity_witness(v, base, j, i);
          }
          return out;
        }
      }
    }
  }

  // Exchange (triple) condition.
  for (std::uint64_t s = 0; s < size; ++s) {
    const ItemSet base(s);
    for (int i = 0; i < k; ++i) {
      if (base.contains(i)) continue;
      for (int j = i + 1; j < k; ++j) {
        if (base.contains(j)) continue;
        for (int l = 0; l < k; ++l) {
          if (l == i || l == j || base.contains(l)) continue;
          const Rational lhs = v.value(base.with(i).with(j)) + v.value(base.with(l));
          const Rational a = v.value(base.with(i).with(l)) + v.value(base.with(j));
          const Rational b = v.value(base.with(j).with(l)) + v.value(base.with(i));
          if (lhs > max(a, b)) {
            GsCheckResult out;
            out.is_gs = false;
            out.witness = detail::gs_definitional_sweep(v, sweep_pair_budget);
            return out;
          }
        }
      }
    }
  }

  // Cross-validation against the definition itself.
  GsCheckResult out;
  std::optional<GsWitness> sweep = detail::gs_definitional_sweep(v, sweep_pair_budget);
  if (sweep.has_value()) {
    out.is_gs = false;
    out.witness = std::move(sweep);
    return out;
  }
  out.is_gs = true;
  return out;
}

}  // namespace adex
