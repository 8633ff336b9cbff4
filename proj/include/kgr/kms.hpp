#pragma once

#include <vector>

#include "kgr/measure.hpp"
#include "kgr/morphism.hpp"
#include "kgr/report.hpp"
#include "kgr/spectral.hpp"

namespace kgr {

// Generator exponents of the R-action alpha_t = gamma_{e^{itr}}.
struct Dynamics {
  std::vector<double> r;
};

Dynamics preferred_dynamics(const PFData& pf);  // r = ln rho

// s_mu s_nu^* with s(mu) = s(nu).
struct SpanningElement {
  Morphism mu, nu;
};

SpanningElement make_spanning(const KGraph& g, Morphism mu, Morphism nu);

// phi(s_mu s_nu^*) = delta_{mu,nu} M(Z(mu))
double state_value(const KGraph& g, const PFData& pf, const SpanningElement& e);

// (s_mu s_nu^*)(s_sigma s_tau^*) expanded over Lambda^min(nu, sigma);
// every term carries coefficient one.
std::vector<SpanningElement> multiply_spanning(const KGraph& g, const SpanningElement& a,
                                               const SpanningElement& b);

// phi(ab) = e^{-beta r.(d(mu)-d(nu))} phi(ba) over all spanning pairs
// with every degree <= bound componentwise.
CheckResult kms_check(const KGraph& g, const PFData& pf, const Dynamics& dyn, double beta,
                      const Degree& bound, double tol = 1e-10);

// The rescaled gauge dynamics r = ln(rho)/s with s the Hausdorff
// dimension of the N-adic embedding; beta_claim is the temperature under
// test, and the check passes exactly at beta_claim = s.
CheckResult hausdorff_kms_check(const KGraph& g, const PFData& pf, double beta_claim,
                                const Degree& bound, double tol = 1e-10);

}  // namespace kgr
