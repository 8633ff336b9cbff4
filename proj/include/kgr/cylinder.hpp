#pragma once

// Finitely supported combinations of cylinder indicator functions and
// the Cuntz-Krieger operators acting on them by term rewriting.  Two
// combinations represent the same L^2 element iff they agree after
// refining both to the join of their term degrees.

#include <unordered_map>
#include <vector>

#include "kgr/modes.hpp"
#include "kgr/morphism.hpp"

namespace kgr {

template <class S>
struct CylinderFunction {
  std::unordered_map<Morphism, S, MorphismHash> terms;

  bool empty() const { return terms.empty(); }
};

template <class Ctx>
using CF = CylinderFunction<typename Ctx::Scalar>;

inline bool scalar_is_zero(const Radical& r) { return r.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& z) { return z == std::complex<double>(); }

template <class Ctx>
CF<Ctx> theta(const Morphism& m) {
  CF<Ctx> f;
  f.terms.emplace(m, Ctx::lift(typename Ctx::Ring(1)));
  return f;
}

template <class S>
void add_term(CylinderFunction<S>& f, const Morphism& m, const S& c) {
  if (scalar_is_zero(c)) return;
  auto [it, inserted] = f.terms.emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (scalar_is_zero(it->second)) f.terms.erase(it);
  }
}

template <class Ctx>
Degree term_join(const Ctx& ctx, const CF<Ctx>& f, Degree at_least) {
  for (const auto& [m, c] : f.terms) at_least = join(at_least, degree_of(ctx.g, m));
  return at_least;
}

// Rewrites every term to degree exactly max(n, join of term degrees);
// the represented L^2 element is unchanged.
template <class Ctx>
CF<Ctx> refine(const Ctx& ctx, const CF<Ctx>& f, const Degree& n) {
  Degree target = term_join(ctx, f, n);
  CF<Ctx> out;
  for (const auto& [m, c] : f.terms) {
    Degree rest = target - degree_of(ctx.g, m);
    if (rest.is_zero()) {
      add_term(out, m, c);
      continue;
    }
    for (const Morphism& ext : enumerate_paths(ctx.g, rest, source_of(ctx.g, m)))
      add_term(out, compose(ctx.g, m, ext), c);
  }
  return out;
}

// <f, h> = sum conj(f_l) h_l M(Z(l)) over the common refinement.
template <class Ctx>
typename Ctx::Scalar inner_product(const Ctx& ctx, const CF<Ctx>& f, const CF<Ctx>& h) {
  Degree target = term_join(ctx, h, term_join(ctx, f, Degree::zero(ctx.g.k)));
  CF<Ctx> a = refine(ctx, f, target);
  CF<Ctx> b = refine(ctx, h, target);
  typename Ctx::Scalar acc = Ctx::lift(typename Ctx::Ring(0));
  for (const auto& [m, c] : a.terms) {
    auto it = b.terms.find(m);
    if (it != b.terms.end()) acc = acc + Ctx::conj(c) * it->second * ctx.measure(m);
  }
  return acc;
}

// S_lambda: Theta_mu -> rho^{d(lambda)/2} Theta_{lambda mu} on r(mu) = s(lambda).
template <class Ctx>
CF<Ctx> apply_S(const Ctx& ctx, const Morphism& lambda, const CF<Ctx>& f) {
  CF<Ctx> out;
  typename Ctx::Scalar gain = ctx.rho_half(degree_of(ctx.g, lambda), +1);
  int src = source_of(ctx.g, lambda);
  for (const auto& [m, c] : f.terms)
    if (m.range == src) add_term(out, compose(ctx.g, lambda, m), c * gain);
  return out;
}

// S*_lambda: refine past d(lambda), then strip the prefix when it is lambda.
template <class Ctx>
CF<Ctx> apply_S_star(const Ctx& ctx, const Morphism& lambda, const CF<Ctx>& f) {
  Degree dl = degree_of(ctx.g, lambda);
  CF<Ctx> fine = refine(ctx, f, dl);
  CF<Ctx> out;
  typename Ctx::Scalar gain = ctx.rho_half(dl, -1);
  for (const auto& [m, c] : fine.terms) {
    if (m.range != lambda.range) continue;
    auto [head, rest] = factor(ctx.g, m, dl);
    if (head == lambda) add_term(out, rest, c * gain);
  }
  return out;
}

template <class S>
CylinderFunction<S> scaled(const CylinderFunction<S>& f, const S& s) {
  CylinderFunction<S> out;
  for (const auto& [m, c] : f.terms) add_term(out, m, c * s);
  return out;
}

template <class S>
CylinderFunction<S> sum(const CylinderFunction<S>& f, const CylinderFunction<S>& h) {
  CylinderFunction<S> out = f;
  for (const auto& [m, c] : h.terms) add_term(out, m, c);
  return out;
}

template <class Ctx>
CF<Ctx> difference(const Ctx& ctx, const CF<Ctx>& f, const CF<Ctx>& h) {
  Degree target = term_join(ctx, h, term_join(ctx, f, Degree::zero(ctx.g.k)));
  CF<Ctx> out = refine(ctx, f, target);
  for (const auto& [m, c] : refine(ctx, h, target).terms) add_term(out, m, -c);
  return out;
}

template <class Ctx>
double l2_norm(const Ctx& ctx, const CF<Ctx>& f) {
  return std::sqrt(Ctx::magnitude(inner_product(ctx, f, f)));
}

// L^2 distance after common refinement; exactly zero iff equal.
template <class Ctx>
double residual(const Ctx& ctx, const CF<Ctx>& f, const CF<Ctx>& h) {
  CF<Ctx> d = difference(ctx, f, h);
  if (d.empty()) return 0.0;
  return l2_norm(ctx, d);
}

// Gram matrix of a family, materialized (real parts) for rank/PSD checks.
template <class Ctx>
std::vector<std::vector<double>> gram_matrix(const Ctx& ctx, const std::vector<CF<Ctx>>& fam) {
  std::vector<std::vector<double>> gram(fam.size(), std::vector<double>(fam.size(), 0.0));
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < fam.size(); ++j)
      gram[i][j] = Ctx::real_part(inner_product(ctx, fam[i], fam[j]));
  return gram;
}

}  // namespace kgr
