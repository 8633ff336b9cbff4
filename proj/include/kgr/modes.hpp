#pragma once

// Arithmetic contexts for the cylinder-function calculus.  FloatCtx
// works over complex doubles; ExactCtx over rationals extended by the
// square roots of the (integer) spectral radii, so that every relation
// residual is certified exactly.  Both expose the same surface:
//   Ring          scalar field used for measures and Gram-Schmidt
//   Scalar        coefficient type (closed under rho^{d/2} factors)
//   measure_ring  M(Z(lambda)) as a Ring
//   measure       M(Z(lambda)) as a Scalar
//   rho_half      prod_i rho_i^{sign * d_i / 2}
//   lift/inv_sqrt Ring -> Scalar embeddings
//   conj/magnitude/is_zero scalar utilities

#include <cmath>
#include <complex>

#include "kgr/exact.hpp"
#include "kgr/measure.hpp"
#include "kgr/morphism.hpp"
#include "kgr/spectral.hpp"

namespace kgr {

struct FloatCtx {
  using Ring = double;
  using Scalar = std::complex<double>;

  const KGraph& g;
  const PFData& pf;

  FloatCtx(const KGraph& graph, const PFData& data) : g(graph), pf(data) {}

  Ring measure_ring(const Morphism& m) const { return cylinder_measure(g, pf, m); }
  Scalar measure(const Morphism& m) const { return Scalar(measure_ring(m), 0.0); }

  Scalar rho_half(const Degree& d, int sign) const {
    double log_sum = 0;
    for (int c = 0; c < d.k(); ++c) log_sum += d.c[c] * std::log(pf.rho[c]);
    return Scalar(std::exp(0.5 * sign * log_sum), 0.0);
  }

  static Scalar lift(Ring r) { return Scalar(r, 0.0); }
  static Scalar inv_sqrt(Ring r) { return Scalar(1.0 / std::sqrt(r), 0.0); }
  static Scalar conj(const Scalar& s) { return std::conj(s); }
  static double magnitude(const Scalar& s) { return std::abs(s); }
  static double real_part(const Scalar& s) { return s.real(); }
  static bool is_zero(const Scalar& s) { return s == Scalar(0.0, 0.0); }
  static bool ring_is_zero(Ring r, double drop_tol) { return std::abs(r) <= drop_tol; }
  static bool ring_positive(Ring r) { return r > 0; }
};

struct ExactCtx {
  using Ring = Rational;
  using Scalar = Radical;

  const KGraph& g;
  const PFData& pf;

  ExactCtx(const KGraph& graph, const PFData& data) : g(graph), pf(data) {
    if (!data.exact) throw DomainError("exact context requires rational eigen-data");
  }

  Ring measure_ring(const Morphism& m) const { return cylinder_measure_exact(g, pf, m); }
  Scalar measure(const Morphism& m) const { return Radical::of(measure_ring(m)); }

  Scalar rho_half(const Degree& d, int sign) const {
    Radical r = Radical::of_int(1);
    for (int c = 0; c < d.k(); ++c) {
      Rational base = sign >= 0 ? Rational(pf.rho_int[c]) : Rational(1, pf.rho_int[c]);
      for (int t = 0; t < d.c[c]; ++t) r *= Radical::sqrt_of(base);
    }
    return r;
  }

  static Scalar lift(const Ring& r) { return Radical::of(r); }
  static Scalar inv_sqrt(const Ring& r) { return Radical::sqrt_of(Rational(1) / r); }
  static Scalar conj(const Scalar& s) { return s; }
  static double magnitude(const Scalar& s) { return std::abs(s.to_double()); }
  static double real_part(const Scalar& s) { return s.to_double(); }
  static bool is_zero(const Scalar& s) { return s.is_zero(); }
  static bool ring_is_zero(const Ring& r, double /*drop_tol*/) { return r == 0; }
  static bool ring_positive(const Ring& r) { return r > 0; }
};

}  // namespace kgr
