#include "kgr/kms.hpp"

#include <cmath>
#include <unordered_map>

#include "kgr/fractal.hpp"

namespace kgr {

Dynamics preferred_dynamics(const PFData& pf) {
  Dynamics d;
  for (double r : pf.rho) d.r.push_back(std::log(r));
  return d;
}

SpanningElement make_spanning(const KGraph& g, Morphism mu, Morphism nu) {
  if (source_of(g, mu) != source_of(g, nu))
    throw DomainError("spanning element needs s(mu) = s(nu)");
  return {std::move(mu), std::move(nu)};
}

double state_value(const KGraph& g, const PFData& pf, const SpanningElement& e) {
  return e.mu == e.nu ? cylinder_measure(g, pf, e.mu) : 0.0;
}

std::vector<SpanningElement> multiply_spanning(const KGraph& g, const SpanningElement& a,
                                               const SpanningElement& b) {
  std::vector<SpanningElement> out;
  for (const auto& [eta, zeta] : lambda_min(g, a.nu, b.mu))
    out.push_back({compose(g, a.mu, eta), compose(g, b.nu, zeta)});
  return out;
}

namespace {

// Interned morphism pool with flat compose / lambda-min tables, so the
// quadratic pair sweep stays cheap.
struct Pool {
  const KGraph& g;
  const PFData& pf;
  std::vector<Morphism> items;
  std::unordered_map<Morphism, int, MorphismHash> index;
  std::vector<double> measure;     // M(Z(.)) per item
  std::vector<Degree> deg;
  std::vector<int> src;

  explicit Pool(const KGraph& gg, const PFData& p) : g(gg), pf(p) {}

  int intern(const Morphism& m) {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(items.size());
    items.push_back(m);
    index.emplace(m, id);
    measure.push_back(cylinder_measure(g, pf, m));
    deg.push_back(degree_of(g, m));
    src.push_back(source_of(g, m));
    return id;
  }
};

}  // namespace

CheckResult kms_check(const KGraph& g, const PFData& pf, const Dynamics& dyn, double beta,
                      const Degree& bound, double tol) {
  if (static_cast<int>(dyn.r.size()) != g.k)
    throw DomainError("dynamics must have one exponent per color");

  CheckResult res;
  res.name = "kms-identity";

  Pool pool(g, pf);
  std::vector<int> base;  // morphisms with degree <= bound, all vertices
  for (const Degree& n : degrees_up_to(bound))
    for (const Morphism& m : enumerate_paths(g, n)) base.push_back(pool.intern(m));
  const int nb = static_cast<int>(base.size());

  // lambda-min lists over base x base, as interned ids
  auto key = [nb](int p, int q) { return static_cast<std::size_t>(p) * nb + q; };
  std::vector<std::vector<std::pair<int, int>>> lmin_raw(static_cast<std::size_t>(nb) * nb);
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q) {
      const Morphism& mp = pool.items[base[p]];
      const Morphism& mq = pool.items[base[q]];
      if (mp.range != mq.range) continue;
      for (const auto& [eta, zeta] : lambda_min(g, mp, mq))
        lmin_raw[key(p, q)].push_back({pool.intern(eta), pool.intern(zeta)});
    }

  // compose table: base morphism x extension -> pool id
  std::unordered_map<std::uint64_t, int> comp;
  auto composed = [&](int a, int e) {
    std::uint64_t k2 = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(e);
    auto it = comp.find(k2);
    if (it != comp.end()) return it->second;
    int id = pool.intern(compose(g, pool.items[a], pool.items[e]));
    comp.emplace(k2, id);
    return id;
  };

  // spanning elements: source-matched pairs of base morphisms
  std::vector<std::pair<int, int>> elems;  // (mu, nu) as base positions
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q)
      if (pool.src[base[p]] == pool.src[base[q]]) elems.push_back({p, q});

  std::vector<double> scale(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Degree& dm = pool.deg[base[elems[i].first]];
    const Degree& dn = pool.deg[base[elems[i].second]];
    double dot = 0;
    for (int c = 0; c < g.k; ++c) dot += dyn.r[c] * (dm.c[c] - dn.c[c]);
    scale[i] = std::exp(-beta * dot);
  }

  auto phi_product = [&](int mu, int nu, int sigma, int tau) {
    double v = 0;
    for (const auto& [eta, zeta] : lmin_raw[key(nu, sigma)]) {
      int left = composed(base[mu], eta);
      int right = composed(base[tau], zeta);
      if (left == right) v += pool.measure[left];
    }
    return v;
  };

  for (std::size_t ia = 0; ia < elems.size(); ++ia) {
    auto [mu, nu] = elems[ia];
    for (std::size_t ib = 0; ib < elems.size(); ++ib) {
      auto [sg, ta] = elems[ib];
      double ab = phi_product(mu, nu, sg, ta);
      double ba = phi_product(sg, ta, mu, nu);
      double diff = std::abs(ab - scale[ia] * ba);
      ++res.instances;
      if (diff > res.max_residual) res.max_residual = diff;
      if (diff > tol && res.pass) {
        res.pass = false;
        res.witness = "a = (" + path_id(g, pool.items[base[mu]]) + ", " +
                      path_id(g, pool.items[base[nu]]) + "), b = (" +
                      path_id(g, pool.items[base[sg]]) + ", " + path_id(g, pool.items[base[ta]]) +
                      ")";
      }
    }
  }
  return res;
}

CheckResult hausdorff_kms_check(const KGraph& g, const PFData& pf, double beta_claim,
                                const Degree& bound, double tol) {
  CheckResult zo = validate_zero_one(g);
  if (!zo.pass)
    throw DomainError("hausdorff dynamics needs {0,1} hypotheses: " + zo.witness);
  double s = hausdorff_dimension(g, pf);
  Dynamics dyn;
  if (s == 0.0) {
    dyn.r.assign(g.k, 0.0);  // rho = 1: trivial dynamics, any beta passes
  } else {
    for (double r : pf.rho) dyn.r.push_back(std::log(r) / s);
  }
  CheckResult res = kms_check(g, pf, dyn, beta_claim, bound, tol);
  res.name = "kms-hausdorff-temperature";
  return res;
}

}  // namespace kgr
