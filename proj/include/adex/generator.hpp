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
#include <string>
#include <utility>
#include <vector>

#include "adex/errors.hpp"
#include "adex/instance.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"

namespace adex {

/// splitmix64. Hand-rolled so that identical seeds give identical instances
/// on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish in [0, n); bias is irrelevant here, determinism is not.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

/// Random non-negative rational with numerator <= max_numerator and
/// denominator from a small fixed pool, so generated values have bounded
/// denominators.
inline Rational random_value(Rng& rng, int max_numerator = 24) {
  static constexpr int kDenominators[] = {1, 1, 2, 3, 4};
  const long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(max_numerator + 1)));
  const long den = kDenominators[rng.below(5)];
  return Rational(num, den);
}

inline PriceVector random_reserves(Rng& rng, int num_items, int max_numerator = 12) {
  std::vector<Rational> r(static_cast<std::size_t>(num_items));
  for (int j = 0; j < num_items; ++j) {
    // a third of the entries stay zero: free items exercise the
    // zero-reserve padding behaviour of mediator demands
    if (rng.below(3) == 0) continue;
    r[static_cast<std::size_t>(j)] = random_value(rng, max_numerator);
  }
  return PriceVector(std::move(r));
}

struct GenParams {
  std::uint64_t seed = 1;
  int num_items = 2;
  int num_bidders = 2;
  int num_mediators = 1;
  std::string mix = "ud";  // ud | additive | or | mixed
};

inline Valuation random_valuation(Rng& rng, int num_items, const std::string& mix) {
  auto random_item_values = [&] {
    std::vector<Rational> values(static_cast<std::size_t>(num_items));
    for (int j = 0; j < num_items; ++j) values[static_cast<std::size_t>(j)] = random_value(rng);
    return values;
  };
  std::string kind = mix;
  if (mix == "mixed") {
    static const char* kKinds[] = {"ud", "additive", "or"};
    kind = kKinds[rng.below(3)];
  }
  if (kind == "ud") return Valuation::unit_demand(random_item_values());
  if (kind == "additive") return Valuation::additive(random_item_values());
  if (kind == "or") {
    // OR of unit-demand children: gross substitutes by composition
    const int children = rng.range(2, 3);
    std::vector<Valuation> parts;
    parts.reserve(static_cast<std::size_t>(children));
    for (int c = 0; c < children; ++c) parts.push_back(Valuation::unit_demand(random_item_values()));
    return Valuation::or_of(std::move(parts));
  }
  throw ValidationError("generator: unknown mix \"" + mix + "\"");
}

/// Deterministic pseudo-random instance, gross substitutes by construction.
/// Same parameters, same bytes.
inline Instance generate_instance(const GenParams& params) {
  if (params.num_items < 1 || params.num_items > 8) {
    throw ValidationError("generator: num_items must be in 1..8 for the default mixes");
  }
  if (params.num_bidders < 1) throw ValidationError("generator: need at least one bidder");
  if (params.num_mediators < 1 || params.num_mediators > params.num_bidders) {
    throw ValidationError("generator: mediator count must be in 1..num_bidders");
  }
  Rng rng(params.seed);
  std::vector<Bidder> bidders;
  bidders.reserve(static_cast<std::size_t>(params.num_bidders));
  for (int b = 0; b < params.num_bidders; ++b) {
    bidders.push_back({b, random_valuation(rng, params.num_items, params.mix)});
  }
  // one bidder per mediator first, the rest land anywhere
  std::vector<MediatorGroup> mediators(static_cast<std::size_t>(params.num_mediators));
  for (int m = 0; m < params.num_mediators; ++m) {
    mediators[static_cast<std::size_t>(m)].id = m;
    mediators[static_cast<std::size_t>(m)].bidder_ids.push_back(m);
  }
  for (int b = params.num_mediators; b < params.num_bidders; ++b) {
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(params.num_mediators)));
    mediators[static_cast<std::size_t>(m)].bidder_ids.push_back(b);
  }
  return Instance(params.num_items, std::move(bidders), std::move(mediators));
}

}  // namespace adex
