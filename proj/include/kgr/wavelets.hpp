#pragma once

// Graph-wavelet decomposition of the depth-n cylinder space: the
// normalized vertex indicators V0, the one-block wavelets f^{m,v}
// spanning the complement of the constants, and their shifts S_lambda
// f^{m,v} over square-degree paths with source v.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgr/cylinder.hpp"
#include "kgr/report.hpp"

namespace kgr {

template <class Ctx>
struct WaveletVector {
  int level = -1;  // -1 marks V0
  int vertex = 0;
  int index = 0;   // m, 1-based within (vertex, level); 0 in V0
  Morphism shift;  // identity for V0 and W_0
  CF<Ctx> coeffs;
};

template <class Ctx>
struct WaveletBasis {
  std::vector<WaveletVector<Ctx>> v0;
  std::vector<std::vector<WaveletVector<Ctx>>> levels;

  std::vector<const WaveletVector<Ctx>*> flatten() const {
    std::vector<const WaveletVector<Ctx>*> out;
    for (const auto& w : v0) out.push_back(&w);
    for (const auto& level : levels)
      for (const auto& w : level) out.push_back(&w);
    return out;
  }
};

template <class Ctx>
std::vector<WaveletVector<Ctx>> build_v0(const Ctx& ctx) {
  std::vector<WaveletVector<Ctx>> out;
  for (int v = 0; v < ctx.g.num_vertices(); ++v) {
    WaveletVector<Ctx> w;
    w.level = -1;
    w.vertex = v;
    w.shift = identity_at(v);
    typename Ctx::Ring mass = ctx.measure_ring(identity_at(v));
    w.coeffs = scaled(theta<Ctx>(identity_at(v)), Ctx::inv_sqrt(mass));
    out.push_back(std::move(w));
  }
  return out;
}

namespace detail {

// Gram-Schmidt of the deflected standard basis {e_t - proj_ones e_t} in
// the weighted inner product <u, w> = sum_t u_t w_t weight_t, dropping
// near-zero vectors.  Returns unnormalized vectors with their squared
// norms; signs fixed so the first nonzero coordinate is positive.
template <class Ctx>
std::vector<std::pair<std::vector<typename Ctx::Ring>, typename Ctx::Ring>>
deflected_gram_schmidt(const std::vector<typename Ctx::Ring>& weights) {
  using Ring = typename Ctx::Ring;
  const std::size_t n = weights.size();
  auto dot = [&](const std::vector<Ring>& a, const std::vector<Ring>& b) {
    Ring acc(0);
    for (std::size_t t = 0; t < n; ++t) acc += a[t] * b[t] * weights[t];
    return acc;
  };
  Ring total(0);
  for (const Ring& w : weights) total += w;

  std::vector<std::pair<std::vector<Ring>, Ring>> kept;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Ring> cand(n, Ring(0));
    cand[t] = Ring(1);
    Ring ones_coef = weights[t] / total;  // <ones, e_t> / <ones, ones>
    for (std::size_t s = 0; s < n; ++s) cand[s] -= ones_coef;
    for (const auto& [u, norm2] : kept) {
      Ring coef = dot(u, cand) / norm2;
      for (std::size_t s = 0; s < n; ++s) cand[s] -= coef * u[s];
    }
    Ring norm2 = dot(cand, cand);
    if (Ctx::ring_is_zero(norm2, 1e-20)) continue;
    for (std::size_t s = 0; s < n; ++s)
      if (!Ctx::ring_is_zero(cand[s], 0.0)) {
        if (!Ctx::ring_positive(cand[s]))
          for (std::size_t r = 0; r < n; ++r) cand[r] = -cand[r];
        break;
      }
    kept.push_back({std::move(cand), norm2});
  }
  return kept;
}

}  // namespace detail

template <class Ctx>
std::vector<WaveletVector<Ctx>> build_w0(const Ctx& ctx) {
  std::vector<WaveletVector<Ctx>> out;
  const Degree ones = Degree::constant(ctx.g.k, 1);
  for (int v = 0; v < ctx.g.num_vertices(); ++v) {
    std::vector<Morphism> dv = enumerate_paths(ctx.g, ones, v);
    std::vector<typename Ctx::Ring> weights;
    for (const Morphism& m : dv) weights.push_back(ctx.measure_ring(m));
    auto vectors = detail::deflected_gram_schmidt<Ctx>(weights);
    if (vectors.size() + 1 != dv.size())
      throw DomainError("wavelet construction at vertex '" + ctx.g.vertices[v] + "' kept " +
                        std::to_string(vectors.size()) + " vectors, expected " +
                        std::to_string(dv.size() - 1));
    int m_index = 1;
    for (const auto& [u, norm2] : vectors) {
      WaveletVector<Ctx> w;
      w.level = 0;
      w.vertex = v;
      w.index = m_index++;
      w.shift = identity_at(v);
      typename Ctx::Scalar unit = Ctx::inv_sqrt(norm2);
      for (std::size_t t = 0; t < dv.size(); ++t)
        add_term(w.coeffs, dv[t], Ctx::lift(u[t]) * unit);
      out.push_back(std::move(w));
    }
  }
  return out;
}

// W_j = {S_lambda f^{m,v} : lambda in C_{j,v}}, ordered by (v, lambda, m).
template <class Ctx>
std::vector<WaveletVector<Ctx>> build_level(const Ctx& ctx, int j,
                                            const std::vector<WaveletVector<Ctx>>& w0) {
  if (j < 1) throw DomainError("level must be >= 1; level 0 is w0 itself");
  std::vector<WaveletVector<Ctx>> out;
  const Degree deg = Degree::constant(ctx.g.k, j);
  for (int v = 0; v < ctx.g.num_vertices(); ++v) {
    for (const Morphism& lam : enumerate_paths(ctx.g, deg, std::nullopt, v)) {
      for (const auto& f : w0) {
        if (f.vertex != v) continue;
        WaveletVector<Ctx> w;
        w.level = j;
        w.vertex = v;
        w.index = f.index;
        w.shift = lam;
        w.coeffs = apply_S(ctx, lam, f.coeffs);
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

template <class Ctx>
WaveletBasis<Ctx> build_basis(const Ctx& ctx, int n) {
  if (n < 1) throw DomainError("truncation depth must be >= 1");
  WaveletBasis<Ctx> basis;
  basis.v0 = build_v0(ctx);
  basis.levels.push_back(build_w0(ctx));
  for (int j = 1; j < n; ++j) basis.levels.push_back(build_level(ctx, j, basis.levels[0]));
  return basis;
}

template <class Ctx>
std::vector<CheckResult> verify_decomposition(const Ctx& ctx, int n, double tol) {
  const KGraph& g = ctx.g;
  WaveletBasis<Ctx> basis = build_basis(ctx, n);
  auto flat = basis.flatten();
  std::vector<CheckResult> out;

  {  // Gram matrix equals the identity
    CheckResult gram;
    gram.name = "wavelet-gram-identity";
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t j = i; j < flat.size(); ++j) {
        typename Ctx::Scalar ip = inner_product(ctx, flat[i]->coeffs, flat[j]->coeffs);
        double expected = i == j ? 1.0 : 0.0;
        double diff;
        if (i == j) {
          diff = Ctx::magnitude(ip - Ctx::lift(typename Ctx::Ring(1)));
        } else {
          diff = Ctx::magnitude(ip);
        }
        gram.record(diff, tol,
                    "<" + std::to_string(i) + "," + std::to_string(j) + "> != " +
                        std::to_string(expected));
      }
    out.push_back(gram);
  }

  {  // telescoping cardinality identity, exact integers
    CheckResult card;
    card.name = "wavelet-cardinality";
    long long expected = count_paths(g, Degree::constant(g.k, n));
    long long got = static_cast<long long>(basis.v0.size());
    for (const auto& level : basis.levels) got += static_cast<long long>(level.size());
    // recompute the sum |Lambda^0| + sum_j sum_v |C_{j,v}| (d_v - 1)
    long long formula = g.num_vertices();
    for (int j = 0; j < n; ++j)
      for (int v = 0; v < g.num_vertices(); ++v) {
        long long shifts =
            j == 0 ? 1 : count_paths(g, Degree::constant(g.k, j), std::nullopt, v);
        long long dv = count_paths(g, Degree::constant(g.k, 1), v);
        formula += shifts * (dv - 1);
      }
    card.record(std::abs(static_cast<double>(got - expected)), 0.5,
                "built " + std::to_string(got) + " vs |Lambda^(n..n)| = " +
                    std::to_string(expected));
    card.record(std::abs(static_cast<double>(formula - expected)), 0.5,
                "formula " + std::to_string(formula) + " vs " + std::to_string(expected));
    out.push_back(card);
  }

  {  // completeness at depth n: every square indicator is reproduced
    CheckResult comp;
    comp.name = "wavelet-completeness";
    for (const Morphism& mu : enumerate_paths(g, Degree::constant(g.k, n))) {
      CF<Ctx> target = theta<Ctx>(mu);
      CF<Ctx> rec;
      for (const auto* w : flat) {
        typename Ctx::Scalar coef = inner_product(ctx, w->coeffs, target);
        if (Ctx::is_zero(coef)) continue;
        rec = sum(rec, scaled(w->coeffs, coef));
      }
      comp.record(residual(ctx, rec, target), tol, "theta " + path_id(g, mu));
    }
    out.push_back(comp);
  }

  return out;
}

// Structured export: one record per basis vector, support paths and
// coefficients aligned, coefficients as decimal strings.
template <class Ctx>
std::string basis_export_json(const Ctx& ctx, const WaveletBasis<Ctx>& basis) {
  nlohmann::ordered_json doc;
  doc["vectors"] = nlohmann::ordered_json::array();
  auto emit = [&](const WaveletVector<Ctx>& w) {
    nlohmann::ordered_json e;
    e["level"] = w.level < 0 ? nlohmann::ordered_json("V0") : nlohmann::ordered_json(w.level);
    e["vertex"] = ctx.g.vertices[w.vertex];
    e["index"] = w.index;
    e["shift"] = path_id(ctx.g, w.shift);
    std::vector<Morphism> support;
    for (const auto& [m, c] : w.coeffs.terms) support.push_back(m);
    std::sort(support.begin(), support.end(),
              [&](const Morphism& a, const Morphism& b) { return path_lex_less(ctx.g, a, b); });
    e["support"] = nlohmann::ordered_json::array();
    e["coefficients"] = nlohmann::ordered_json::array();
    char buf[64];
    for (const Morphism& m : support) {
      e["support"].push_back(path_id(ctx.g, m));
      std::snprintf(buf, sizeof buf, "%.17g", Ctx::real_part(w.coeffs.terms.at(m)));
      e["coefficients"].push_back(std::string(buf));
    }
    doc["vectors"].push_back(e);
  };
  for (const auto& w : basis.v0) emit(w);
  for (const auto& level : basis.levels)
    for (const auto& w : level) emit(w);
  return doc.dump(2);
}

}  // namespace kgr
