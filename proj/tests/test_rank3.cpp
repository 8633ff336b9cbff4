#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "kgr/ck.hpp"
#include "kgr/wavelets.hpp"

using namespace kgr;

TEST_CASE("rank-3 flip graph loads; hexagon-violating squares are rejected") {
  KGraph g = load_fixture("k3_flip.json");
  CHECK(g.k == 3);
  CHECK(g.squares.size() == 12);
  CHECK_THROWS_WITH_AS(load_fixture("bad_hexagon.json"), doctest::Contains("hexagon"),
                       ValidationError);
}

TEST_CASE("rank-3 rainbow patterns cycle colors blockwise") {
  KGraph g = load_fixture("k3_flip.json");
  CHECK(canonical_color_pattern(Degree({2, 2, 2})) == std::vector<int>{0, 1, 2, 0, 1, 2});
  CHECK(canonical_color_pattern(Degree({2, 1, 1})) == std::vector<int>{0, 1, 2, 0});
  CHECK(canonical_color_pattern(Degree({0, 2, 1})) == std::vector<int>{1, 2, 1});
  for (const Morphism& m : enumerate_paths(g, Degree({1, 1, 1}))) {
    CHECK(g.edge(m.edges[0]).color == 0);
    CHECK(g.edge(m.edges[1]).color == 1);
    CHECK(g.edge(m.edges[2]).color == 2);
  }
}

TEST_CASE("rank-3 counts, round trips and lambda_min oracles") {
  KGraph g = load_fixture("k3_flip.json");
  Degree bound({2, 2, 2});
  for (const Degree& n : degrees_up_to(bound)) {
    if (n.total() > 3) continue;
    Matrix m = mat_power_product(g, n);
    CHECK(count_paths(g, n) == mat_entry_sum(m));
    for (const Morphism& lam : enumerate_paths(g, n))
      for (const Degree& cut : degrees_up_to(n)) {
        auto [head, tail] = factor(g, lam, cut);
        CHECK(compose(g, head, tail) == lam);
      }
  }
  // one-block lambda_min against the join scan
  auto small = enumerate_paths(g, Degree({1, 0, 0}));
  auto other = enumerate_paths(g, Degree({0, 1, 1}));
  for (const Morphism& mu : small)
    for (const Morphism& nu : other) {
      auto got = lambda_min(g, mu, nu);
      std::set<std::pair<std::string, std::string>> expected, actual;
      Degree J = join(degree_of(g, mu), degree_of(g, nu));
      for (const Morphism& lam : enumerate_paths(g, J, mu.range)) {
        auto [pm, eta] = factor(g, lam, degree_of(g, mu));
        auto [pn, zeta] = factor(g, lam, degree_of(g, nu));
        if (pm == mu && pn == nu) expected.insert({path_id(g, eta), path_id(g, zeta)});
      }
      for (const auto& [eta, zeta] : got) actual.insert({path_id(g, eta), path_id(g, zeta)});
      CHECK(actual == expected);
    }
}

TEST_CASE("rank-3 relations and wavelets at depth 1, exact") {
  KGraph g = load_fixture("k3_flip.json");
  PFData pf = perron_frobenius(g);
  REQUIRE(pf.exact);
  CHECK(pf.rho_int == std::vector<long long>{2, 2, 2});
  ExactCtx ctx(g, pf);
  for (const CheckResult& r : verify_ck(ctx, 1, 0.0)) {
    CAPTURE(r.name);
    CHECK(r.pass);
    CHECK(r.max_residual == 0.0);
  }
  // 1 vertex + 7 wavelets = |Lambda^{(1,1,1)}| = 8
  for (const CheckResult& r : verify_decomposition(ctx, 1, 0.0)) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }
  WaveletBasis<ExactCtx> basis = build_basis(ctx, 1);
  CHECK(basis.v0.size() == 1);
  CHECK(basis.levels[0].size() == 7);
}

TEST_CASE("depth-3 relation sweep on the 1-graph fixtures") {
  for (const char* name : {"single_loop.json", "full_shift_2.json"}) {
    KGraph g = load_fixture(name);
    CAPTURE(name);
    PFData pf = perron_frobenius(g);
    ExactCtx ctx(g, pf);
    for (const CheckResult& r : verify_ck(ctx, 3, 0.0)) {
      CAPTURE(r.name);
      CHECK(r.pass);
      CHECK(r.max_residual == 0.0);
    }
  }
}
