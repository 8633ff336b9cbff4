#pragma once

// Exact scalar types used when the Perron-Frobenius data is rational:
// arbitrary-precision rationals plus a small ring of quadratic radicals
// Q[sqrt(b1), sqrt(b2), ...].  The radical ring is closed under the
// operations the cylinder-function calculus needs (products of rho^{n/2}
// factors and rational measure weights), so relation residuals can be
// certified to be exactly zero.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "kgr/errors.hpp"

namespace kgr {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// n = a^2 * b with b squarefree; returns (a, b).  n must be positive.
inline std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t n) {
  if (n <= 0) throw DomainError("squarefree_split expects a positive integer");
  std::int64_t a = 1, b = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int t = 0; t < e / 2; ++t) a *= p;
    if (e % 2) b *= p;
  }
  b *= n;  // leftover prime
  return {a, b};
}

// Finite Q-linear combination sum_b q_b * sqrt(b) over squarefree b >= 1.
// The terms are linearly independent over Q, so equality is termwise.
class Radical {
 public:
  Radical() = default;

  static Radical of(const Rational& q) {
    Radical r;
    if (q != 0) r.terms_[1] = q;
    return r;
  }
  static Radical of_int(long long n) { return of(Rational(n)); }

  // sqrt of a positive rational p/q = sqrt(p*q)/q
  static Radical sqrt_of(const Rational& value) {
    if (value == 0) return Radical();
    if (value < 0) throw DomainError("sqrt of negative rational");
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    BigInt prod = num * den;
    if (prod > BigInt(std::numeric_limits<std::int64_t>::max()))
      throw DomainError("radical base too large for exact mode");
    auto [a, b] = squarefree_split(prod.convert_to<std::int64_t>());
    Radical r;
    r.terms_[b] = Rational(a) / Rational(den);
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  Rational rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend Radical operator+(const Radical& x, const Radical& y) {
    Radical r = x;
    for (const auto& [b, q] : y.terms_) r.add_term(b, q);
    return r;
  }
  friend Radical operator-(const Radical& x, const Radical& y) {
    Radical r = x;
    for (const auto& [b, q] : y.terms_) r.add_term(b, -q);
    return r;
  }
  Radical operator-() const {
    Radical r;
    for (const auto& [b, q] : terms_) r.terms_[b] = -q;
    return r;
  }
  friend Radical operator*(const Radical& x, const Radical& y) {
    Radical r;
    for (const auto& [b1, q1] : x.terms_)
      for (const auto& [b2, q2] : y.terms_) {
        std::int64_t g = std::gcd(b1, b2);
        std::int64_t base = (b1 / g) * (b2 / g);
        r.add_term(base, q1 * q2 * g);
      }
    return r;
  }
  Radical& operator+=(const Radical& y) { return *this = *this + y; }
  Radical& operator-=(const Radical& y) { return *this = *this - y; }
  Radical& operator*=(const Radical& y) { return *this = *this * y; }

  friend bool operator==(const Radical& x, const Radical& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const Radical& x, const Radical& y) { return !(x == y); }

  double to_double() const {
    double s = 0;
    for (const auto& [b, q] : terms_) s += kgr::to_double(q) * std::sqrt(static_cast<double>(b));
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [b, q] : terms_) {
      if (!s.empty()) s += " + ";
      s += q.str();
      if (b != 1) s += "*sqrt(" + std::to_string(b) + ")";
    }
    return s;
  }

 private:
  void add_term(std::int64_t base, const Rational& q) {
    if (q == 0) return;
    auto it = terms_.find(base);
    if (it == terms_.end()) {
      terms_[base] = q;
    } else {
      it->second += q;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<std::int64_t, Rational> terms_;
};

}  // namespace kgr
