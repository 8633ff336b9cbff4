#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "kgr/errors.hpp"

namespace kgr {

// Multidegree in N^k.  One component per color.
struct Degree {
  std::vector<int> c;

  Degree() = default;
  explicit Degree(std::vector<int> comps) : c(std::move(comps)) {}
  static Degree zero(int k) { return Degree(std::vector<int>(k, 0)); }
  static Degree unit(int k, int color) {
    Degree d = zero(k);
    d.c[color] = 1;
    return d;
  }
  static Degree constant(int k, int value) { return Degree(std::vector<int>(k, value)); }

  int k() const { return static_cast<int>(c.size()); }
  int operator[](int i) const { return c[i]; }
  int& operator[](int i) { return c[i]; }

  // |n| = n_1 + ... + n_k
  long long total() const { return std::accumulate(c.begin(), c.end(), 0LL); }
  bool is_zero() const { return total() == 0; }

  friend bool operator==(const Degree& a, const Degree& b) { return a.c == b.c; }
  friend bool operator!=(const Degree& a, const Degree& b) { return a.c != b.c; }
  friend bool operator<(const Degree& a, const Degree& b) { return a.c < b.c; }  // lex, for ordered maps

  friend Degree operator+(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.k(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend Degree operator-(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.k(); ++i) {
      r.c[i] -= b.c[i];
      if (r.c[i] < 0) throw DomainError("degree subtraction out of range");
    }
    return r;
  }

  // componentwise partial order
  friend bool leq(const Degree& a, const Degree& b) {
    for (int i = 0; i < a.k(); ++i)
      if (a.c[i] > b.c[i]) return false;
    return true;
  }
  // componentwise max, m ∨ n
  friend Degree join(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.k(); ++i) r.c[i] = std::max(r.c[i], b.c[i]);
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < k(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }
};

struct DegreeHash {
  std::size_t operator()(const Degree& d) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : d.c) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// All degrees m with 0 <= m <= bound componentwise, in lexicographic order.
inline std::vector<Degree> degrees_up_to(const Degree& bound) {
  std::vector<Degree> out;
  Degree cur = Degree::zero(bound.k());
  while (true) {
    out.push_back(cur);
    int i = bound.k() - 1;
    while (i >= 0 && cur.c[i] == bound.c[i]) cur.c[i--] = 0;
    if (i < 0) break;
    ++cur.c[i];
  }
  return out;
}

}  // namespace kgr
