#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgr/degree.hpp"
#include "kgr/kgraph.hpp"

namespace kgr {

// A finite path in normal form.  The color pattern of the edge sequence
// is the canonical one for its degree (see canonical_color_pattern), so
// two Morphism values are equal iff range and edge sequences are equal.
// Identity morphisms have an empty edge list.
struct Morphism {
  int range = -1;
  std::vector<int> edges;  // global edge indices, range-first composition order

  bool is_identity() const { return edges.empty(); }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.range == b.range && a.edges == b.edges;
  }
  friend bool operator!=(const Morphism& a, const Morphism& b) { return !(a == b); }
};

struct MorphismHash {
  std::size_t operator()(const Morphism& m) const noexcept {
    std::size_t h = static_cast<std::size_t>(m.range) * 0x9e3779b97f4a7c15ull + 1;
    for (int e : m.edges) {
      h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

Morphism identity_at(int vertex);
int source_of(const KGraph& g, const Morphism& m);
Degree degree_of(const KGraph& g, const Morphism& m);

// Canonical color pattern for a degree: blocks cycle through the colors
// in ascending order, block j carrying the colors whose component is
// still >= j.  Square degrees get the full rainbow block (1,...,k)^m.
std::vector<int> canonical_color_pattern(const Degree& d);

// Builds a morphism from any composable edge sequence (range-first),
// rewriting it to normal form with the factorization squares.
Morphism make_morphism(const KGraph& g, int range, std::vector<int> edge_seq);

Morphism compose(const KGraph& g, const Morphism& a, const Morphism& b);

// Unique (mu, nu) with d(mu) = m and mu nu = lambda.
std::pair<Morphism, Morphism> factor(const KGraph& g, const Morphism& lambda, const Degree& m);

// lambda(a, b) = the middle factor between degrees a and b.
Morphism segment(const KGraph& g, const Morphism& lambda, const Degree& a, const Degree& b);

// All morphisms of the given degree, lexicographic by edge-id sequence.
std::vector<Morphism> enumerate_paths(const KGraph& g, const Degree& d,
                                      std::optional<int> range = std::nullopt,
                                      std::optional<int> source = std::nullopt);

// DFS visitor form; fn returning false aborts the walk.  Returns false
// iff aborted.  Same ordering as enumerate_paths.
bool for_each_path(const KGraph& g, const Degree& d, std::optional<int> range,
                   const std::function<bool(const Morphism&)>& fn);

long long count_paths(const KGraph& g, const Degree& d, std::optional<int> range = std::nullopt,
                      std::optional<int> source = std::nullopt);

// Lambda^min(mu, nu): all (eta, zeta) with mu eta = nu zeta of degree
// d(mu) v d(nu).  Ordered by the enumeration of eta.
std::vector<std::pair<Morphism, Morphism>> lambda_min(const KGraph& g, const Morphism& mu,
                                                      const Morphism& nu);

bool is_strongly_connected(const KGraph& g);

// Bounded periodicity probe.  A witness (v, m, n) certifies that every
// path with range v satisfies sigma^m = sigma^n on the examined window;
// absence of a witness up to the bound is evidence, not proof, of
// aperiodicity.
struct AperiodicityResult {
  bool periodic = false;
  int vertex = -1;
  Degree m, n;
  int depth_bound = 0;
};
AperiodicityResult aperiodicity_probe(const KGraph& g, int depth_bound);

// Stable printable id: edge ids joined with '.'; identities are "v:<name>".
std::string path_id(const KGraph& g, const Morphism& m);
Morphism parse_path_id(const KGraph& g, const std::string& id);

// Lexicographic comparison on edge-id strings (the deterministic path order).
bool path_lex_less(const KGraph& g, const Morphism& a, const Morphism& b);

}  // namespace kgr
