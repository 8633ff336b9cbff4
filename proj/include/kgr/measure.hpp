#pragma once

#include <vector>

#include "kgr/morphism.hpp"
#include "kgr/report.hpp"
#include "kgr/spectral.hpp"

namespace kgr {

// M(Z(lambda)) = prod_i rho_i^{-d(lambda)_i} * x_{s(lambda)}
double cylinder_measure(const KGraph& g, const PFData& pf, const Morphism& m);
Rational cylinder_measure_exact(const KGraph& g, const PFData& pf, const Morphism& m);

// Coefficient-level descriptor of the canonical semibranching system on
// the path space: prefixing is path prepending, coding is the shift, and
// the Radon-Nikodym derivative of tau_lambda is the constant
// rho^{-d(lambda)} on Z(s(lambda)).
struct SBFSSpec {
  std::vector<double> rho;

  double phi(const Degree& d) const;               // constant RN value of tau_lambda
  int domain_vertex(const KGraph& g, const Morphism& m) const;  // D = Z(s(m))
  Morphism range_path(const Morphism& m) const { return m; }    // R = Z(m)

  // coding map tau^a on a finite word (requires a <= d(lambda))
  Morphism code(const KGraph& g, const Degree& a, const Morphism& m) const;
  // prefixing map tau_lambda applied to a finite word
  Morphism prefix(const KGraph& g, const Morphism& lambda, const Morphism& word) const;
};

SBFSSpec standard_sbfs(const KGraph& g, const PFData& pf);

// M(Z(mu)) = sum over extensions of degree n of M(Z(mu lambda)), for all
// |d(mu)| <= depth and |n| <= depth.
CheckResult check_additivity(const KGraph& g, const PFData& pf, int depth);

// Constant Radon-Nikodym profile C^{-d}: solvable iff C equals the
// spectral radii, in which case the induced measure is the cylinder
// measure.  A failed solve is the uniqueness witness.
struct RnMeasureResult {
  bool consistent = false;
  double residual = 0.0;
  std::vector<double> vertex_mass;  // mu(Z(v)) when consistent
  std::string detail;
};
RnMeasureResult measure_from_rn_derivative(const KGraph& g, const std::vector<double>& C,
                                           double tol = 1e-8);

}  // namespace kgr
