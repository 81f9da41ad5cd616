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

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "adex/generator.hpp"
#include "adex/smallk.hpp"
#include "adex/verify.hpp"

using namespace adex;

namespace {

/// Exhaustive matching oracle: every injective partial row-to-column map.
Rational matching_bruteforce(const std::vector<std::vector<Rational>>& w) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows == 0 ? 0 : w.front().size();
  Rational best;
  std::vector<bool> used(cols, false);
  auto rec = [&](auto&& self, std::size_t i, Rational acc) -> void {
    if (i == rows) {
      best = max(best, acc);
      return;
    }
    self(self, i + 1, acc);  // row unmatched
    for (std::size_t j = 0; j < cols; ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, acc + w[i][j]);
      used[j] = false;
    }
  };
  rec(rec, 0, Rational(0));
  return best;
}

std::vector<std::vector<Rational>> random_matrix(Rng& rng, int rows, int cols) {
  std::vector<std::vector<Rational>> w(static_cast<std::size_t>(rows),
                                       std::vector<Rational>(static_cast<std::size_t>(cols)));
  for (auto& line : w) {
    for (auto& x : line) x = random_value(rng, 9);
  }
  return w;
}

}  // namespace

TEST_CASE("partition counts are the bell numbers") {
  CHECK(count_set_partitions(0) == 1);
  CHECK(count_set_partitions(1) == 1);
  CHECK(count_set_partitions(3) == 5);
  CHECK(count_set_partitions(4) == 15);
  CHECK(count_set_partitions(8) == 4140);
  CHECK_THROWS_AS(count_set_partitions(13), SizeGuardError);
}

TEST_CASE("partitions are distinct, exhaustive, and cover the ground set") {
  std::set<std::set<std::uint64_t>> seen;
  const ItemSet ground = ItemSet::of({1, 3, 4, 5});
  enumerate_set_partitions(ground, [&](const std::vector<ItemSet>& blocks) {
    std::set<std::uint64_t> key;
    ItemSet unionised;
    for (const ItemSet& b : blocks) {
      REQUIRE_FALSE(b.empty());
      REQUIRE((unionised & b).empty());
      unionised = unionised | b;
      key.insert(b.bits());
    }
    CHECK(unionised == ground);
    CHECK(seen.insert(key).second);  // never repeated
  });
  CHECK(seen.size() == 15);
}

TEST_CASE("hungarian on curated matrices") {
  const HungarianResult two_rows = hungarian_max_matching({{Rational(5)}, {Rational(3)}});
  CHECK(two_rows.total_weight == Rational(5));
  CHECK(two_rows.matched_block == std::vector<int>{0, -1});

  const HungarianResult diag = hungarian_max_matching(
      {{Rational(9), Rational(1)}, {Rational(1), Rational(9)}});
  CHECK(diag.total_weight == Rational(18));
  CHECK(diag.matched_block == std::vector<int>{0, 1});

  const HungarianResult cross = hungarian_max_matching(
      {{Rational(4), Rational(1)}, {Rational(2), Rational(3)}});
  CHECK(cross.total_weight == Rational(7));
  CHECK(cross.matched_block == std::vector<int>{0, 1});

  CHECK_THROWS_AS(hungarian_max_matching({{Rational(1)}, {Rational(1), Rational(2)}}),
                  ValidationError);
}

TEST_CASE("hungarian equals exhaustive matching enumeration") {
  Rng rng(867);
  for (int round = 0; round < 120; ++round) {
    const int rows = rng.range(1, 5);
    const int cols = rng.range(1, 5);
    const auto w = random_matrix(rng, rows, cols);
    const HungarianResult res = hungarian_max_matching(w);
    CHECK(res.total_weight == matching_bruteforce(w));

    // the reported matching is injective and adds up
    Rational total;
    std::set<int> cols_used;
    for (int i = 0; i < rows; ++i) {
      const int j = res.matched_block[static_cast<std::size_t>(i)];
      if (j < 0) continue;
      CHECK(cols_used.insert(j).second);
      total += w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    CHECK(total == res.total_weight);
  }
}

TEST_CASE("smallk welfare equals branch-and-bound and brute force") {
  Rng rng(5309);
  for (int round = 0; round < 40; ++round) {
    const int k = rng.range(1, 5);
    const int n = rng.range(1, 6);
    std::vector<Valuation> vals;
    for (int b = 0; b < n; ++b) vals.push_back(random_valuation(rng, k, "mixed"));
    const ItemSet items = ItemSet::full(k);
    const WelfareSolution via_partitions = smallk_max_welfare(items, vals);
    CHECK(via_partitions.welfare == max_welfare(items, vals).welfare);
    CHECK(via_partitions.welfare == brute_welfare(items, vals));

    // the reported allocation really attains the reported welfare
    Rational attained;
    for (int b = 0; b < n; ++b) {
      attained += vals[static_cast<std::size_t>(b)].value(via_partitions.allocation.set_of(b));
    }
    CHECK(attained == via_partitions.welfare);
  }
}

TEST_CASE("a lone monotone bidder takes everything") {
  const Valuation v = Valuation::additive({Rational(2), Rational(0), Rational(1)});
  const WelfareSolution ws = smallk_max_welfare(ItemSet::full(3), {v});
  CHECK(ws.welfare == Rational(3));
}

TEST_CASE("unit-demand bidders reduce to the assignment problem") {
  Rng rng(1999);
  for (int round = 0; round < 20; ++round) {
    const int k = rng.range(1, 4);
    const int n = rng.range(1, 4);
    std::vector<Valuation> vals;
    std::vector<std::vector<Rational>> w(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(k)));
    for (int b = 0; b < n; ++b) {
      std::vector<Rational> values;
      for (int j = 0; j < k; ++j) {
        values.push_back(random_value(rng, 9));
        w[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] = values.back();
      }
      vals.push_back(Valuation::unit_demand(std::move(values)));
    }
    CHECK(smallk_max_welfare(ItemSet::full(k), vals).welfare ==
          hungarian_max_matching(w).total_weight);
  }
}
