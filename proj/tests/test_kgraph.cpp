#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "kgr/morphism.hpp"

using namespace kgr;

TEST_CASE("ledrappier loads with the printed matrices and 16 auto squares") {
  KGraph g = load_fixture("ledrappier.json");
  CHECK(g.k == 2);
  CHECK(g.num_vertices() == 4);
  Matrix A1 = {{1, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0}};
  Matrix A2 = {{1, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 1, 0, 1}};
  CHECK(g.A[0] == A1);
  CHECK(g.A[1] == A2);
  CHECK(g.squares.size() == 16);
  // A1 A2 is the all-ones matrix
  Matrix prod = mat_mul(g.A[0], g.A[1]);
  for (const auto& row : prod)
    for (long long v : row) CHECK(v == 1);
}

TEST_CASE("smallest k-graph: one vertex, one loop") {
  KGraph g = load_fixture("single_loop.json");
  CHECK(g.k == 1);
  CHECK(g.A[0] == Matrix{{1}});
  CHECK(g.squares.empty());
}

TEST_CASE("non-commuting matrices are rejected") {
  CHECK_THROWS_WITH_AS(load_fixture("bad_noncommute.json"),
                       doctest::Contains("matrices do not commute"), ValidationError);
}

TEST_CASE("2-to-2 pairings cannot be auto-derived") {
  CHECK_THROWS_WITH_AS(load_fixture("bad_ambiguous.json"), doctest::Contains("ambiguous"),
                       ValidationError);
}

TEST_CASE("a vertex missing an incoming color is rejected") {
  CHECK_THROWS_WITH_AS(load_fixture("bad_missing_color.json"),
                       doctest::Contains("no incoming edge"), ValidationError);
}

TEST_CASE("malformed documents are schema errors") {
  CHECK_THROWS_AS(load_fixture("bad_schema.json"), ValidationError);
  CHECK_THROWS_AS(load_kgraph("{\"k\": 0, \"vertices\": [\"v\"], \"edges\": {}, \"squares\": []}"),
                  ValidationError);
}

TEST_CASE("explicit squares load and validate (one-vertex flip graph)") {
  KGraph g = load_fixture("one_vertex_flip.json");
  CHECK(g.squares.size() == 4);
  CHECK(g.A[0] == Matrix{{2}});
  CHECK(g.A[1] == Matrix{{2}});
}

TEST_CASE("path enumeration counts match matrix products") {
  for (const char* name :
       {"ledrappier.json", "full_shift_2.json", "full_shift_3.json", "one_vertex_flip.json",
        "product_graph.json", "single_loop.json"}) {
    KGraph g = load_fixture(name);
    CAPTURE(name);
    Degree bound = Degree::constant(g.k, 4);
    for (const Degree& n : degrees_up_to(bound)) {
      if (n.total() > 4) continue;
      Matrix m = mat_power_product(g, n);
      CHECK(count_paths(g, n) == mat_entry_sum(m));
      for (int v = 0; v < g.num_vertices(); ++v)
        for (int w = 0; w < g.num_vertices(); ++w)
          CHECK(count_paths(g, n, v, w) == m[v][w]);
    }
  }
}

TEST_CASE("ledrappier degree (1,1) paths: 16 total, 4 from each vertex") {
  KGraph g = load_fixture("ledrappier.json");
  Degree d({1, 1});
  CHECK(enumerate_paths(g, d).size() == 16);
  for (int v = 0; v < 4; ++v) CHECK(enumerate_paths(g, d, v).size() == 4);
}

TEST_CASE("degree zero enumerates the vertex identities") {
  KGraph g = load_fixture("ledrappier.json");
  auto ids = enumerate_paths(g, Degree::zero(2));
  REQUIRE(ids.size() == 4);
  for (int v = 0; v < 4; ++v) {
    CHECK(ids[v].is_identity());
    CHECK(ids[v].range == v);
  }
}

TEST_CASE("enumeration is deterministic and lexicographic") {
  KGraph g = load_fixture("ledrappier.json");
  auto paths = enumerate_paths(g, Degree({1, 1}));
  for (std::size_t i = 0; i + 1 < paths.size(); ++i)
    CHECK(path_lex_less(g, paths[i], paths[i + 1]));
}

TEST_CASE("composition adds degrees and respects identities") {
  KGraph g = load_fixture("ledrappier.json");
  for (const Morphism& nu : enumerate_paths(g, Degree({1, 1}))) {
    Morphism id = identity_at(nu.range);
    CHECK(compose(g, id, nu) == nu);
    CHECK(compose(g, nu, identity_at(source_of(g, nu))) == nu);
  }
  for (const Morphism& a : enumerate_paths(g, Degree({1, 0})))
    for (const Morphism& b : enumerate_paths(g, Degree({0, 1}), source_of(g, a))) {
      Morphism c = compose(g, a, b);
      CHECK(degree_of(g, c) == Degree({1, 1}));
      CHECK(c.range == a.range);
      CHECK(source_of(g, c) == source_of(g, b));
    }
}

TEST_CASE("square-degree rainbow blocks concatenate without swaps") {
  KGraph g = load_fixture("ledrappier.json");
  for (const Morphism& a : enumerate_paths(g, Degree({1, 1})))
    for (const Morphism& b : enumerate_paths(g, Degree({1, 1}), source_of(g, a))) {
      Morphism c = compose(g, a, b);
      std::vector<int> concat = a.edges;
      concat.insert(concat.end(), b.edges.begin(), b.edges.end());
      CHECK(c.edges == concat);
    }
}

TEST_CASE("factor round trip is exhaustive up to |d| <= 4") {
  for (const char* name : {"ledrappier.json", "full_shift_2.json", "one_vertex_flip.json",
                           "product_graph.json"}) {
    KGraph g = load_fixture(name);
    CAPTURE(name);
    Degree bound = Degree::constant(g.k, 4);
    for (const Degree& n : degrees_up_to(bound)) {
      if (n.total() > 4) continue;
      for (const Morphism& lam : enumerate_paths(g, n)) {
        for (const Degree& m : degrees_up_to(n)) {
          auto [mu, nu] = factor(g, lam, m);
          CHECK(degree_of(g, mu) == m);
          CHECK(compose(g, mu, nu) == lam);
        }
      }
    }
  }
}

TEST_CASE("factor edge cases: full and empty prefixes") {
  KGraph g = load_fixture("ledrappier.json");
  Morphism lam = enumerate_paths(g, Degree({1, 1}))[3];
  auto [full, tail] = factor(g, lam, Degree({1, 1}));
  CHECK(full == lam);
  CHECK(tail == identity_at(source_of(g, lam)));
  auto [head, rest] = factor(g, lam, Degree::zero(2));
  CHECK(head == identity_at(lam.range));
  CHECK(rest == lam);
  CHECK_THROWS_AS(factor(g, lam, Degree({2, 0})), DomainError);
}

TEST_CASE("factoring a square path at (0,1) uses the stored square") {
  KGraph g = load_fixture("ledrappier.json");
  for (const Morphism& lam : enumerate_paths(g, Degree({1, 1}))) {
    auto [mu, nu] = factor(g, lam, Degree({0, 1}));
    CHECK(degree_of(g, mu) == Degree({0, 1}));
    CHECK(degree_of(g, nu) == Degree({1, 0}));
    CHECK(compose(g, mu, nu) == lam);
  }
}

TEST_CASE("lambda_min agrees with brute force over the join degree") {
  for (const char* name : {"ledrappier.json", "full_shift_2.json", "one_vertex_flip.json",
                           "product_graph.json"}) {
    KGraph g = load_fixture(name);
    CAPTURE(name);
    Degree bound = Degree::constant(g.k, 2);
    std::vector<Morphism> all;
    for (const Degree& n : degrees_up_to(bound)) {
      if (n.total() > 2) continue;
      auto paths = enumerate_paths(g, n);
      all.insert(all.end(), paths.begin(), paths.end());
    }
    for (const Morphism& mu : all)
      for (const Morphism& nu : all) {
        auto got = lambda_min(g, mu, nu);
        // oracle: scan every path of the join degree for common extensions
        std::set<std::pair<std::string, std::string>> expected;
        if (mu.range == nu.range) {
          Degree J = join(degree_of(g, mu), degree_of(g, nu));
          for (const Morphism& lam : enumerate_paths(g, J, mu.range)) {
            auto [pm, eta] = factor(g, lam, degree_of(g, mu));
            auto [pn, zeta] = factor(g, lam, degree_of(g, nu));
            if (pm == mu && pn == nu) expected.insert({path_id(g, eta), path_id(g, zeta)});
          }
        }
        std::set<std::pair<std::string, std::string>> actual;
        for (const auto& [eta, zeta] : got) actual.insert({path_id(g, eta), path_id(g, zeta)});
        CHECK(actual == expected);
      }
  }
}

TEST_CASE("lambda_min special cases") {
  KGraph g = load_fixture("ledrappier.json");
  Morphism mu = enumerate_paths(g, Degree({1, 0}))[0];
  auto self = lambda_min(g, mu, mu);
  REQUIRE(self.size() == 1);
  CHECK(self[0].first == identity_at(source_of(g, mu)));
  CHECK(self[0].second == identity_at(source_of(g, mu)));
  // distinct ranges have no common extension
  Morphism other;
  for (const Morphism& x : enumerate_paths(g, Degree({0, 1})))
    if (x.range != mu.range) {
      other = x;
      break;
    }
  CHECK(lambda_min(g, mu, other).empty());
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(load_fixture("ledrappier.json")));
  CHECK(is_strongly_connected(load_fixture("single_loop.json")));
  CHECK(is_strongly_connected(load_fixture("product_graph.json")));
  // two isolated single-vertex components
  KGraph g = load_kgraph(R"({
    "k": 1, "vertices": ["x", "y"],
    "edges": {"1": [{"id": "ex", "source": "x", "range": "x"},
                     {"id": "ey", "source": "y", "range": "y"}]},
    "squares": "auto"})");
  CHECK_FALSE(is_strongly_connected(g));
}

TEST_CASE("aperiodicity probe") {
  SUBCASE("single loop is periodic with witness (0),(1)") {
    auto r = aperiodicity_probe(load_fixture("single_loop.json"), 2);
    REQUIRE(r.periodic);
    CHECK(r.vertex == 0);
    CHECK(r.m == Degree({0}));
    CHECK(r.n == Degree({1}));
  }
  SUBCASE("ledrappier shows no periodicity up to depth 3") {
    auto r = aperiodicity_probe(load_fixture("ledrappier.json"), 3);
    CHECK_FALSE(r.periodic);
    CHECK(r.depth_bound == 3);
  }
  SUBCASE("multi-loop 2-graph and 3-graph show no periodicity up to depth 2") {
    CHECK_FALSE(aperiodicity_probe(load_fixture("one_vertex_flip.json"), 2).periodic);
    CHECK_FALSE(aperiodicity_probe(load_fixture("k3_flip.json"), 1).periodic);
  }
  SUBCASE("two loops on one vertex: every shift pair is distinguished") {
    KGraph g = load_fixture("full_shift_2.json");
    auto r = aperiodicity_probe(g, 3);
    CHECK_FALSE(r.periodic);
    // oracle: for each pair m < n there is a distinguishing window
    Degree window({3});
    for (int m = 0; m <= 3; ++m)
      for (int n = m + 1; n <= 3; ++n) {
        bool distinguished = false;
        for (const Morphism& p : enumerate_paths(g, Degree({n}) + window, 0))
          if (segment(g, p, Degree({m}), Degree({m}) + window) !=
              segment(g, p, Degree({n}), Degree({n}) + window)) {
            distinguished = true;
            break;
          }
        CHECK(distinguished);
      }
  }
}

TEST_CASE("square relation is a total bijection in both directions") {
  for (const char* name : {"ledrappier.json", "one_vertex_flip.json", "product_graph.json"}) {
    KGraph g = load_fixture(name);
    CAPTURE(name);
    std::set<std::pair<int, int>> ij, ji;
    for (const auto& sq : g.squares) {
      CHECK(ij.insert({sq.ij_first, sq.ij_second}).second);
      CHECK(ji.insert({sq.ji_first, sq.ji_second}).second);
    }
    long long composable_ij = 0;
    for (const Edge& a : g.edges[0])
      for (const Edge& b : g.edges[g.k - 1])
        if (g.k > 1 && a.source == b.range) ++composable_ij;
    if (g.k > 1) CHECK(static_cast<long long>(ij.size()) == composable_ij);
  }
}

TEST_CASE("path ids round-trip") {
  KGraph g = load_fixture("ledrappier.json");
  for (const Morphism& m : enumerate_paths(g, Degree({2, 1})))
    CHECK(parse_path_id(g, path_id(g, m)) == m);
  CHECK(parse_path_id(g, "v:u2") == identity_at(2));
  CHECK_THROWS_AS(parse_path_id(g, "nope"), DomainError);
}
