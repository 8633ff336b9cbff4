#include "kgr/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "kgr/morphism.hpp"

namespace kgr {

namespace {

std::vector<double> mat_apply(const Matrix& A, const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t v = 0; v < x.size(); ++v)
    for (std::size_t w = 0; w < x.size(); ++w) y[v] += static_cast<double>(A[v][w]) * x[w];
  return y;
}

std::vector<double> apply_product(const std::vector<Matrix>& mats, std::vector<double> x) {
  for (auto m = mats.rbegin(); m != mats.rend(); ++m) x = mat_apply(*m, x);
  return x;
}

void normalize_l1(std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += std::abs(v);
  for (double& v : x) v /= s;
}

double inf_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// l1 growth ratio; exact eigenvalue once x is the positive eigenvector.
double l1_ratio(const Matrix& A, const std::vector<double>& x) {
  double sy = 0, sx = 0;
  std::vector<double> y = mat_apply(A, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    sy += y[i];
    sx += x[i];
  }
  return sy / sx;
}

std::vector<double> resid_per_matrix(const KGraph& g, const std::vector<double>& rho,
                                     const std::vector<double>& x) {
  std::vector<double> r(g.k, 0.0);
  for (int c = 0; c < g.k; ++c) {
    std::vector<double> y = mat_apply(g.A[c], x);
    for (std::size_t v = 0; v < x.size(); ++v)
      r[c] = std::max(r[c], std::abs(y[v] - rho[c] * x[v]));
  }
  return r;
}

// Damped power iteration on the product matrix; averaging consecutive
// iterates suppresses the oscillation of matrix-periodic products.
// Convergence is judged by the per-matrix residuals directly.
bool iterate_product(const KGraph& g, double tol, int max_iter, std::vector<double>& x,
                     std::vector<double>& rho, std::vector<double>& res) {
  const int n = g.num_vertices();
  x.assign(n, 1.0 / n);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x = x, best_rho(g.k, 0.0), best_res;
  int since_improved = 0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> y = apply_product(g.A, x);
    normalize_l1(y);
    std::vector<double> next(n);
    for (int i = 0; i < n; ++i) next[i] = x[i] + y[i];
    normalize_l1(next);
    x = std::move(next);
    for (int c = 0; c < g.k; ++c) rho[c] = l1_ratio(g.A[c], x);
    res = resid_per_matrix(g, rho, x);
    double worst = *std::max_element(res.begin(), res.end());
    if (worst < best) {
      best = worst;
      best_x = x;
      best_rho = rho;
      best_res = res;
      since_improved = 0;
    } else if (++since_improved >= 8 && best <= tol) {
      break;  // polished to the float floor
    } else if (since_improved >= 8) {
      x = best_x;
      rho = best_rho;
      res = best_res;
      return false;  // stalled above tolerance
    }
  }
  x = best_x;
  rho = best_rho;
  res = best_res;
  return best <= tol;
}

// Exact solve of the stacked system {A_i x = r_i x}, sum x = 1 over Q.
// Empty result on rank deficiency, inconsistency, or a nonpositive entry.
std::vector<Rational> solve_exact_eigen(const KGraph& g, const std::vector<long long>& r) {
  const int n = g.num_vertices();
  std::vector<std::vector<Rational>> rows;
  for (int c = 0; c < g.k; ++c) {
    for (int v = 0; v < n; ++v) {
      std::vector<Rational> row(n + 1, 0);
      for (int w = 0; w < n; ++w) row[w] = Rational(g.A[c][v][w]);
      row[v] -= Rational(r[c]);
      rows.push_back(row);
    }
  }
  rows.push_back(std::vector<Rational>(n + 1, 1));

  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int rr = rank; rr < static_cast<int>(rows.size()); ++rr)
      if (rows[rr][col] != 0) {
        pivot = rr;
        break;
      }
    if (pivot < 0) return {};
    std::swap(rows[rank], rows[pivot]);
    Rational p = rows[rank][col];
    for (int j = 0; j <= n; ++j) rows[rank][j] /= p;
    for (int rr = 0; rr < static_cast<int>(rows.size()); ++rr) {
      if (rr == rank || rows[rr][col] == 0) continue;
      Rational f = rows[rr][col];
      for (int j = 0; j <= n; ++j) rows[rr][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  for (int rr = rank; rr < static_cast<int>(rows.size()); ++rr)
    if (rows[rr][n] != 0) return {};  // inconsistent: r is not the joint spectrum

  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rows[i][n];
    if (x[i] <= 0) return {};
  }
  return x;
}

}  // namespace

Rational PFData::rho_exact_pow(const Degree& d) const {
  Rational p = 1;
  for (int i = 0; i < d.k(); ++i)
    for (int t = 0; t < d.c[i]; ++t) p *= Rational(rho_int[i]);
  return p;
}

PFData perron_frobenius(const KGraph& g, double tol, int max_iter) {
  if (tol <= 0) throw DomainError("tol must be positive");
  if (!is_strongly_connected(g))
    throw DomainError("Perron-Frobenius data requires a strongly connected graph");

  PFData pf;
  pf.rho.assign(g.k, 0.0);
  bool ok = iterate_product(g, tol, max_iter, pf.x, pf.rho, pf.residual);

  if (!ok) {
    // fallback: iterate each matrix separately and cross-validate that the
    // per-matrix eigenvectors are collinear with the product iterate
    std::vector<double> xref = pf.x;
    for (int c = 0; c < g.k; ++c) {
      std::vector<double> xc, rc(1), resc;
      KGraph one;
      one.k = 1;
      one.vertices = g.vertices;
      one.edges = {g.edges[c]};
      one.build_derived();
      if (!iterate_product(one, tol, max_iter, xc, rc, resc) || inf_dist(xc, xref) > 1e-6)
        throw DomainError("power iteration did not converge within max_iter");
      pf.rho[c] = rc[0];
    }
    pf.residual = resid_per_matrix(g, pf.rho, pf.x);
    if (*std::max_element(pf.residual.begin(), pf.residual.end()) > tol)
      throw DomainError("power iteration did not converge within max_iter");
  }

  // exact lane: integer radii with a rational eigen-system solution
  std::vector<long long> r_int(g.k);
  bool integral = true;
  for (int c = 0; c < g.k; ++c) {
    r_int[c] = std::llround(pf.rho[c]);
    if (r_int[c] < 1 || std::abs(pf.rho[c] - static_cast<double>(r_int[c])) > 1e-9)
      integral = false;
  }
  if (integral) {
    std::vector<Rational> xr = solve_exact_eigen(g, r_int);
    if (!xr.empty()) {
      pf.exact = true;
      pf.rho_int = r_int;
      pf.x_exact = xr;
      for (int c = 0; c < g.k; ++c) pf.rho[c] = static_cast<double>(r_int[c]);
      for (int v = 0; v < g.num_vertices(); ++v) pf.x[v] = to_double(xr[v]);
      pf.residual = resid_per_matrix(g, pf.rho, pf.x);
    }
  }

  for (double v : pf.x)
    if (!(v > 0)) throw DomainError("computed eigenvector has a nonpositive entry");
  return pf;
}

EigenvectorReport verify_common_eigenvector(const KGraph& g, const std::vector<double>& rho,
                                            const std::vector<double>& x, double tol) {
  EigenvectorReport rep;
  rep.residual = resid_per_matrix(g, rho, x);
  for (double r : rep.residual) rep.max_residual = std::max(rep.max_residual, r);
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace kgr
