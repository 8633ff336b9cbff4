#pragma once

#include <vector>

#include "kgr/exact.hpp"
#include "kgr/kgraph.hpp"

namespace kgr {

// Perron-Frobenius data: spectral radii of the vertex matrices and the
// common l1-normalized positive eigenvector.  When every radius is an
// integer and the eigen-system has a rational solution, the exact lane
// is populated and downstream checks can run without float noise.
struct PFData {
  std::vector<double> rho;
  std::vector<double> x;
  std::vector<double> residual;  // per matrix, max |A_i x - rho_i x|

  bool exact = false;
  std::vector<long long> rho_int;
  std::vector<Rational> x_exact;

  Rational rho_exact_pow(const Degree& d) const;  // prod rho_i^{d_i}, d >= 0
};

struct EigenvectorReport {
  std::vector<double> residual;
  double max_residual = 0;
  bool pass = false;
};

PFData perron_frobenius(const KGraph& g, double tol = 1e-12, int max_iter = 100000);

EigenvectorReport verify_common_eigenvector(const KGraph& g, const std::vector<double>& rho,
                                            const std::vector<double>& x, double tol);

}  // namespace kgr
