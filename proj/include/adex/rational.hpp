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

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "adex/errors.hpp"

namespace adex {

/// Exact rational scalar. Every value, price, utility, and revenue in the
/// engine is one of these; there is no floating point anywhere.
///
/// Backed by GMP's mpq_class and kept canonical at all times: lowest terms,
/// positive denominator. Serialized form is "num" or "num/den".
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor): literals convert
  Rational(long num, long den) {
    if (den == 0) throw ValidationError("rational: zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "num" or "num/den" with optional leading '-'. Throws
  /// ValidationError on malformed input or zero denominator.
  static Rational parse(const std::string& text) {
    if (text.empty()) throw ValidationError("rational: empty string");
    std::size_t slash = text.find('/');
    const std::string num = text.substr(0, slash);
    if (!is_integer_token(num)) {
      throw ValidationError("rational: bad numerator in '" + text + "'");
    }
    Rational out;
    if (slash == std::string::npos) {
      out.v_ = mpq_class(num, 10);
    } else {
      const std::string den = text.substr(slash + 1);
      if (!is_integer_token(den) || den[0] == '-') {
        throw ValidationError("rational: bad denominator in '" + text + "'");
      }
      out.v_ = mpq_class(num + "/" + den, 10);
      if (out.v_.get_den() == 0) {
        throw ValidationError("rational: zero denominator in '" + text + "'");
      }
    }
    out.v_.canonicalize();
    return out;
  }

  std::string str() const { return v_.get_str(); }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ValidationError("rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static bool is_integer_token(const std::string& s) {
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  }

  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace adex
