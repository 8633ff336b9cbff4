#pragma once

// Verifier for the Cuntz-Krieger relations acting on the square-degree
// cylinder basis: vertex projections, composition, the partial-isometry
// identity, the range partition, and the minimal-common-extension
// expansion of S*_mu S_nu.

#include <vector>

#include "kgr/cylinder.hpp"
#include "kgr/report.hpp"

namespace kgr {

template <class Ctx>
std::vector<CheckResult> verify_ck(const Ctx& ctx, int depth, double tol) {
  if (depth < 1) throw DomainError("depth must be >= 1");
  const KGraph& g = ctx.g;
  const Degree square = Degree::constant(g.k, depth);

  std::vector<CF<Ctx>> basis;
  std::vector<Morphism> basis_paths = enumerate_paths(g, square);
  for (const Morphism& m : basis_paths) basis.push_back(theta<Ctx>(m));

  // all morphisms with total degree <= depth * k
  const long long budget = static_cast<long long>(depth) * g.k;
  std::vector<Morphism> small;
  for (const Degree& n : degrees_up_to(Degree::constant(g.k, depth * g.k))) {
    if (n.total() > budget) continue;
    for (const Morphism& m : enumerate_paths(g, n)) small.push_back(m);
  }

  std::vector<CheckResult> out;

  {  // (CK1) S_v S_w = delta_vw S_v
    CheckResult ck1;
    ck1.name = "CK1-vertex-projections";
    for (int v = 0; v < g.num_vertices(); ++v)
      for (int w = 0; w < g.num_vertices(); ++w)
        for (std::size_t b = 0; b < basis.size(); ++b) {
          CF<Ctx> lhs = apply_S(ctx, identity_at(v), apply_S(ctx, identity_at(w), basis[b]));
          CF<Ctx> rhs = v == w ? apply_S(ctx, identity_at(v), basis[b]) : CF<Ctx>{};
          ck1.record(residual(ctx, lhs, rhs), tol,
                     "v=" + g.vertices[v] + " w=" + g.vertices[w] +
                         " on " + path_id(g, basis_paths[b]));
        }
    out.push_back(ck1);
  }

  {  // (CK2) S_lambda S_nu = S_{lambda nu}, |d(lambda nu)| <= depth * k
    CheckResult ck2;
    ck2.name = "CK2-composition";
    for (const Morphism& lam : small)
      for (const Morphism& nu : small) {
        if (degree_of(g, lam).total() + degree_of(g, nu).total() > budget) continue;
        if (source_of(g, lam) != nu.range) continue;
        Morphism lamnu = compose(g, lam, nu);
        int src = source_of(g, nu);
        for (std::size_t b = 0; b < basis.size(); ++b) {
          if (basis_paths[b].range != src) {  // both sides vanish on this cylinder
            ck2.record(0.0, tol, "");
            continue;
          }
          CF<Ctx> lhs = apply_S(ctx, lam, apply_S(ctx, nu, basis[b]));
          CF<Ctx> rhs = apply_S(ctx, lamnu, basis[b]);
          ck2.record(residual(ctx, lhs, rhs), tol,
                     "lambda=" + path_id(g, lam) + " nu=" + path_id(g, nu) + " on " +
                         path_id(g, basis_paths[b]));
        }
      }
    out.push_back(ck2);
  }

  {  // (CK3) S*_lambda S_lambda = S_{s(lambda)}
    CheckResult ck3;
    ck3.name = "CK3-partial-isometry";
    for (const Morphism& lam : small) {
      int src = source_of(g, lam);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (basis_paths[b].range != src) {
          ck3.record(0.0, tol, "");
          continue;
        }
        CF<Ctx> lhs = apply_S_star(ctx, lam, apply_S(ctx, lam, basis[b]));
        CF<Ctx> rhs = apply_S(ctx, identity_at(src), basis[b]);
        ck3.record(residual(ctx, lhs, rhs), tol,
                   "lambda=" + path_id(g, lam) + " on " + path_id(g, basis_paths[b]));
      }
    }
    out.push_back(ck3);
  }

  {  // (CK4) sum_{lambda in v Lambda^n} S_lambda S*_lambda = S_v
    CheckResult ck4;
    ck4.name = "CK4-range-partition";
    for (int v = 0; v < g.num_vertices(); ++v)
      for (const Degree& n : degrees_up_to(square))
        for (std::size_t b = 0; b < basis.size(); ++b) {
          CF<Ctx> acc;
          for (const Morphism& lam : enumerate_paths(g, n, v))
            acc = sum(acc, apply_S(ctx, lam, apply_S_star(ctx, lam, basis[b])));
          CF<Ctx> rhs = apply_S(ctx, identity_at(v), basis[b]);
          ck4.record(residual(ctx, acc, rhs), tol,
                     "v=" + g.vertices[v] + " n=" + n.str() + " on " +
                         path_id(g, basis_paths[b]));
        }
    out.push_back(ck4);
  }

  {  // S*_mu S_nu = sum over Lambda^min(mu, nu); empty sums are zero
    CheckResult mce;
    mce.name = "lambda-min-expansion";
    for (const Morphism& mu : small)
      for (const Morphism& nu : small) {
        if (degree_of(g, mu).total() + degree_of(g, nu).total() > budget) continue;
        auto pairs = lambda_min(g, mu, nu);
        // both sides act through the cylinder at s(nu): the left via S_nu,
        // the right because r(zeta) = s(nu) for every common extension
        int src = source_of(g, nu);
        for (std::size_t b = 0; b < basis.size(); ++b) {
          if (basis_paths[b].range != src) {
            mce.record(0.0, tol, "");
            continue;
          }
          CF<Ctx> lhs = apply_S_star(ctx, mu, apply_S(ctx, nu, basis[b]));
          CF<Ctx> rhs;
          for (const auto& [eta, zeta] : pairs)
            rhs = sum(rhs, apply_S(ctx, eta, apply_S_star(ctx, zeta, basis[b])));
          mce.record(residual(ctx, lhs, rhs), tol,
                     "mu=" + path_id(g, mu) + " nu=" + path_id(g, nu) + " on " +
                         path_id(g, basis_paths[b]));
        }
      }
    out.push_back(mce);
  }

  return out;
}

}  // namespace kgr
