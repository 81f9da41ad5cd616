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
// The few-items route to welfare maximization: enumerate the set partitions
// of the items, value each block like a single good, and solve the
// resulting unit-demand assignment with the Hungarian method. The best
// partition attains the combinatorial optimum, because any allocation's
// nonempty bundles extend to a partition whose blocks are matched.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/items.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"
#include "adex/welfare.hpp"

namespace adex {

/// Bell-number guard for partition enumeration (Bell(12) = 4,213,597).
constexpr int kMaxPartitionItems = 12;

/// Calls fn once per unordered set partition of `items` into nonempty
/// blocks. Enumeration follows restricted-growth strings, so the order is
/// deterministic and every partition appears exactly once; blocks arrive
/// ordered by their smallest element.
template <class F>
void enumerate_set_partitions(ItemSet items, F&& fn) {
  const std::vector<int> pos = items.items();
  const int n = static_cast<int>(pos.size());
  if (n > kMaxPartitionItems) {
    throw SizeGuardError("partition enumeration limited to " +
                         std::to_string(kMaxPartitionItems) + " items");
  }
  if (n == 0) {
    fn(std::vector<ItemSet>{});
    return;
  }
  // rgs[t] = block index of the t-th item; rgs[t] <= 1 + max(rgs[0..t-1])
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  auto emit = [&]() {
    const int blocks = prefix_max[static_cast<std::size_t>(n - 1)] + 1;
    std::vector<ItemSet> out(static_cast<std::size_t>(blocks));
    for (int t = 0; t < n; ++t) {
      auto& block = out[static_cast<std::size_t>(rgs[static_cast<std::size_t>(t)])];
      block = block.with(pos[static_cast<std::size_t>(t)]);
    }
    fn(out);
  };
  while (true) {
    emit();
    int t = n - 1;
    while (t > 0) {
      const int cap = prefix_max[static_cast<std::size_t>(t - 1)] + 1;
      if (rgs[static_cast<std::size_t>(t)] < cap) break;
      --t;
    }
    if (t == 0) return;  // all strings visited
    ++rgs[static_cast<std::size_t>(t)];
    prefix_max[static_cast<std::size_t>(t)] =
        std::max(prefix_max[static_cast<std::size_t>(t - 1)], rgs[static_cast<std::size_t>(t)]);
    for (int u = t + 1; u < n; ++u) {
      rgs[static_cast<std::size_t>(u)] = 0;
      prefix_max[static_cast<std::size_t>(u)] = prefix_max[static_cast<std::size_t>(u - 1)];
    }
  }
}

inline std::uint64_t count_set_partitions(int n) {
  std::uint64_t count = 0;
  enumerate_set_partitions(ItemSet::full(n), [&](const std::vector<ItemSet>&) { ++count; });
  return count;
}

struct HungarianResult {
  std::vector<int> matched_block;  // per row; -1 = unmatched
  Rational total_weight;
};

namespace detail {

/// Optimal assignment value for a rectangular non-negative matrix, rows and
/// columns matched at most once. Jonker-Volgenant style shortest augmenting
/// paths on the negated matrix, exact rationals throughout; padding to a
/// square with zeros makes partial matching available for free.
inline Rational assignment_optimum(const std::vector<std::vector<Rational>>& w) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows == 0 ? 0 : w.front().size();
  const std::size_t s = std::max(rows, cols);
  if (s == 0) return Rational(0);

  auto cost = [&](std::size_t i, std::size_t j) -> Rational {
    if (i < rows && j < cols) return -w[i][j];
    return Rational(0);
  };

  struct Dist {
    bool inf = true;
    Rational v;
  };

  std::vector<Rational> u(s + 1), v(s + 1);
  std::vector<std::size_t> match(s + 1, 0);  // match[j] = row matched to column j; 0 = free
  for (std::size_t i = 1; i <= s; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<Dist> minv(s + 1);
    std::vector<bool> used(s + 1, false);
    std::vector<std::size_t> way(s + 1, 0);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::size_t j1 = 0;
      Dist delta;
      for (std::size_t j = 1; j <= s; ++j) {
        if (used[j]) continue;
        Rational cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (minv[j].inf || cur < minv[j].v) {
          minv[j] = {false, std::move(cur)};
          way[j] = j0;
        }
        if (delta.inf || minv[j].v < delta.v) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= s; ++j) {
        if (used[j]) {
          u[match[j]] += delta.v;
          v[j] -= delta.v;
        } else if (!minv[j].inf) {
          minv[j].v -= delta.v;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Rational total;
  for (std::size_t j = 1; j <= s; ++j) {
    const std::size_t i = match[j];
    if (i >= 1 && i - 1 < rows && j - 1 < cols) total += w[i - 1][j - 1];
  }
  return total;
}

/// Optimum of the residual problem with some rows/columns removed.
inline Rational residual_optimum(const std::vector<std::vector<Rational>>& w,
                                 const std::vector<bool>& row_gone,
                                 const std::vector<bool>& col_gone) {
  std::vector<std::vector<Rational>> sub;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (row_gone[i]) continue;
    std::vector<Rational> line;
    for (std::size_t j = 0; j < w[i].size(); ++j) {
      if (!col_gone[j]) line.push_back(w[i][j]);
    }
    sub.push_back(std::move(line));
  }
  return assignment_optimum(sub);
}

}  // namespace detail

/// Maximum-weight bipartite matching (each row at most one column and vice
/// versa) over exact rationals. The returned matching is canonical: among
/// all optimal matchings it is the lexicographically smallest per-row
/// choice vector, unmatched sorting after the last column.
inline HungarianResult hungarian_max_matching(const std::vector<std::vector<Rational>>& weights) {
  const std::size_t rows = weights.size();
  const std::size_t cols = rows == 0 ? 0 : weights.front().size();
  for (const auto& line : weights) {
    if (line.size() != cols) throw ValidationError("weight matrix is not rectangular");
    for (const Rational& x : line) {
      if (x.sign() < 0) throw ValidationError("matching weights must be non-negative");
    }
  }

  HungarianResult out;
  out.matched_block.assign(rows, -1);
  out.total_weight = detail::assignment_optimum(weights);

  std::vector<bool> row_gone(rows, false), col_gone(cols, false);
  Rational fixed;
  for (std::size_t i = 0; i < rows; ++i) {
    row_gone[i] = true;
    int choice = -1;
    for (std::size_t j = 0; j < cols; ++j) {
      if (col_gone[j]) continue;
      col_gone[j] = true;
      const Rational rest = detail::residual_optimum(weights, row_gone, col_gone);
      if (fixed + weights[i][j] + rest == out.total_weight) {
        choice = static_cast<int>(j);
        fixed += weights[i][j];
        break;
      }
      col_gone[j] = false;
    }
    out.matched_block[i] = choice;  // stays -1 when skipping row i is optimal
  }
  return out;
}

/// Welfare maximization through the partition-and-match route. Exact; must
/// agree with max_welfare, which the suite asserts.
inline WelfareSolution smallk_max_welfare(ItemSet items, const std::vector<Valuation>& valuations) {
  if (items.count() > kMaxPartitionItems) {
    throw SizeGuardError("smallk welfare limited to " + std::to_string(kMaxPartitionItems) +
                         " items");
  }
  const std::size_t n = valuations.size();
  std::optional<Rational> best;
  Allocation best_alloc;
  enumerate_set_partitions(items, [&](const std::vector<ItemSet>& blocks) {
    std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(blocks.size()));
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t t = 0; t < blocks.size(); ++t) {
        weights[b][t] = valuations[b].value(blocks[t]);
      }
    }
    const HungarianResult match = hungarian_max_matching(weights);
    if (!best.has_value() || match.total_weight > *best) {
      best = match.total_weight;
      std::map<int, ItemSet> sets;
      for (std::size_t b = 0; b < n; ++b) {
        sets[static_cast<int>(b)] = match.matched_block[b] >= 0
                                        ? blocks[static_cast<std::size_t>(match.matched_block[b])]
                                        : ItemSet();
      }
      best_alloc = Allocation(std::move(sets));
    }
  });
  if (!best.has_value()) {
    // no items: empty partition, everyone gets nothing
    std::map<int, ItemSet> sets;
    for (std::size_t b = 0; b < n; ++b) sets[static_cast<int>(b)] = ItemSet();
    return {Allocation(std::move(sets)), Rational(0)};
  }
  return {std::move(best_alloc), std::move(*best)};
}

}  // namespace adex
