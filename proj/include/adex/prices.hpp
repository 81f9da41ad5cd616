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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "adex/errors.hpp"
#include "adex/items.hpp"
#include "adex/rational.hpp"

namespace adex {

/// A non-negative exact price per item. Prices over a ground set smaller
/// than the universe keep length k and hold zero off the ground set.
class PriceVector {
 public:
  PriceVector() = default;

  explicit PriceVector(std::vector<Rational> prices) : prices_(std::move(prices)) {
    for (std::size_t j = 0; j < prices_.size(); ++j) {
      if (prices_[j].sign() < 0) {
        throw ValidationError("price of item " + std::to_string(j) + " is negative");
      }
    }
  }

  static PriceVector zero(int num_items) {
    return PriceVector(std::vector<Rational>(static_cast<std::size_t>(num_items)));
  }

  int size() const { return static_cast<int>(prices_.size()); }

  const Rational& at(int item) const { return prices_.at(static_cast<std::size_t>(item)); }
  const Rational& operator[](int item) const { return prices_[static_cast<std::size_t>(item)]; }

  /// p(S) = sum of prices over S.
  Rational sum_over(ItemSet s) const {
    Rational total;
    for (int j : s.items()) total += at(j);
    return total;
  }

  /// Copy with one entry replaced. Used to build perturbations in tests.
  PriceVector with(int item, Rational value) const {
    std::vector<Rational> copy = prices_;
    copy.at(static_cast<std::size_t>(item)) = std::move(value);
    return PriceVector(std::move(copy));
  }

  const std::vector<Rational>& entries() const { return prices_; }

  std::string str() const {
    std::string out = "(";
    for (int j = 0; j < size(); ++j) {
      if (j) out += ", ";
      out += prices_[static_cast<std::size_t>(j)].str();
    }
    return out + ")";
  }

  friend bool operator==(const PriceVector& a, const PriceVector& b) {
    return a.prices_ == b.prices_;
  }
  friend bool operator!=(const PriceVector& a, const PriceVector& b) { return !(a == b); }

 private:
  std::vector<Rational> prices_;
};

namespace detail {
inline void check_same_length(const PriceVector& a, const PriceVector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("price vectors have different lengths: " +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}
}  // namespace detail

inline PriceVector pointwise_min(const PriceVector& a, const PriceVector& b) {
  detail::check_same_length(a, b);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(a.size()));
  for (int j = 0; j < a.size(); ++j) out.push_back(min(a[j], b[j]));
  return PriceVector(std::move(out));
}

inline PriceVector pointwise_max(const PriceVector& a, const PriceVector& b) {
  detail::check_same_length(a, b);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(a.size()));
  for (int j = 0; j < a.size(); ++j) out.push_back(max(a[j], b[j]));
  return PriceVector(std::move(out));
}

/// Componentwise a <= b.
inline bool leq(const PriceVector& a, const PriceVector& b) {
  detail::check_same_length(a, b);
  for (int j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

}  // namespace adex
