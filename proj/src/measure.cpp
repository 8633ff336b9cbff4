#include "kgr/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kgr {

double cylinder_measure(const KGraph& g, const PFData& pf, const Morphism& m) {
  Degree d = degree_of(g, m);
  double v = pf.x[source_of(g, m)];
  for (int c = 0; c < g.k; ++c) v *= std::pow(pf.rho[c], -d.c[c]);
  return v;
}

Rational cylinder_measure_exact(const KGraph& g, const PFData& pf, const Morphism& m) {
  if (!pf.exact) throw DomainError("exact measure requires rational eigen-data");
  return pf.x_exact[source_of(g, m)] / pf.rho_exact_pow(degree_of(g, m));
}

double SBFSSpec::phi(const Degree& d) const {
  double p = 1.0;
  for (int c = 0; c < d.k(); ++c) p *= std::pow(rho[c], -d.c[c]);
  return p;
}

int SBFSSpec::domain_vertex(const KGraph& g, const Morphism& m) const {
  return source_of(g, m);
}

Morphism SBFSSpec::code(const KGraph& g, const Degree& a, const Morphism& m) const {
  return factor(g, m, a).second;
}

Morphism SBFSSpec::prefix(const KGraph& g, const Morphism& lambda, const Morphism& word) const {
  return compose(g, lambda, word);
}

SBFSSpec standard_sbfs(const KGraph& g, const PFData& pf) {
  if (!is_strongly_connected(g))
    throw DomainError("the canonical semibranching system needs a strongly connected graph");
  SBFSSpec s;
  s.rho = pf.rho;
  return s;
}

CheckResult check_additivity(const KGraph& g, const PFData& pf, int depth) {
  if (depth < 1) throw DomainError("depth must be >= 1");
  CheckResult res;
  res.name = "measure-additivity";
  Degree bound = Degree::constant(g.k, depth);
  for (const Degree& dm : degrees_up_to(bound)) {
    if (dm.total() > depth) continue;
    for (const Morphism& mu : enumerate_paths(g, dm)) {
      double base = cylinder_measure(g, pf, mu);
      for (const Degree& n : degrees_up_to(bound)) {
        if (n.total() > depth) continue;
        double sum = 0;
        for (const Morphism& lam : enumerate_paths(g, n, source_of(g, mu)))
          sum += cylinder_measure(g, pf, compose(g, mu, lam));
        res.record(std::abs(base - sum), 1e-12,
                   "mu=" + path_id(g, mu) + " n=" + n.str());
      }
    }
  }
  return res;
}

RnMeasureResult measure_from_rn_derivative(const KGraph& g, const std::vector<double>& C,
                                           double tol) {
  if (static_cast<int>(C.size()) != g.k)
    throw DomainError("profile C must have one component per color");
  for (double c : C)
    if (!(c > 0)) throw DomainError("profile C must be positive");

  // A constant derivative C^{-d} forces mu(Z(v)) to solve A_i y = C_i y
  // with sum y = 1; solve the stacked system by least squares and accept
  // only a genuinely positive probability solution.
  const int n = g.num_vertices();
  std::vector<std::vector<double>> S;
  std::vector<double> b;
  for (int c = 0; c < g.k; ++c) {
    for (int v = 0; v < n; ++v) {
      std::vector<double> row(n, 0.0);
      for (int w = 0; w < n; ++w) row[w] = static_cast<double>(g.A[c][v][w]);
      row[v] -= C[c];
      S.push_back(row);
      b.push_back(0.0);
    }
  }
  S.push_back(std::vector<double>(n, 1.0));
  b.push_back(1.0);

  // normal equations (tiny systems)
  std::vector<std::vector<double>> N(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t r = 0; r < S.size(); ++r)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) N[i][j] += S[r][i] * S[r][j];
      N[i][n] += S[r][i] * b[r];
    }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(N[r][col]) > std::abs(N[piv][col])) piv = r;
    std::swap(N[col], N[piv]);
    if (std::abs(N[col][col]) < 1e-14) {
      RnMeasureResult bad;
      bad.consistent = false;
      bad.residual = 1.0;
      bad.detail = "normal equations are singular: no probability measure fits the scaling";
      return bad;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = N[r][col] / N[col][col];
      for (int j = col; j <= n; ++j) N[r][j] -= f * N[col][j];
    }
  }
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = N[i][n] / N[i][i];

  RnMeasureResult out;
  double resid = 0;
  for (std::size_t r = 0; r < S.size(); ++r) {
    double dot = -b[r];
    for (int i = 0; i < n; ++i) dot += S[r][i] * y[i];
    resid = std::max(resid, std::abs(dot));
  }
  out.residual = resid;
  double ymin = *std::min_element(y.begin(), y.end());
  if (resid > tol || ymin <= 0) {
    out.consistent = false;
    std::ostringstream ss;
    ss << "no probability measure satisfies the C-scaling: max residual " << resid;
    if (ymin <= 0) ss << ", nonpositive vertex mass " << ymin;
    out.detail = ss.str();
    return out;
  }
  out.consistent = true;
  out.vertex_mass = y;
  return out;
}

}  // namespace kgr
