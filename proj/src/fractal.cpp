#include "kgr/fractal.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace kgr {

namespace {

void require_zero_one(const KGraph& g) {
  if (!is_zero_one(g))
    throw DomainError(
        "the embedding requires {0,1} vertex matrices with a {0,1} product");
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) {
    if (r > std::numeric_limits<long long>::max() / b)
      throw DomainError("embedding cell denominator overflows; reduce the depth");
    r *= b;
  }
  return r;
}

}  // namespace

CheckResult validate_zero_one(const KGraph& g) {
  CheckResult res;
  res.name = "zero-one-hypotheses";
  const int n = g.num_vertices();
  for (int c = 0; c < g.k; ++c) {
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        res.record(g.A[c][v][w] > 1 ? static_cast<double>(g.A[c][v][w]) : 0.0, 0.5,
                   "A" + std::to_string(c + 1) + "(" + g.vertices[v] + "," + g.vertices[w] +
                       ") = " + std::to_string(g.A[c][v][w]));
  }
  // product A = A_1 ... A_k
  Matrix A = g.A[0];
  for (int c = 1; c < g.k; ++c) {
    Matrix next(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) next[i][j] += A[i][l] * g.A[c][l][j];
    A = next;
  }
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      res.record(A[v][w] > 1 ? static_cast<double>(A[v][w]) : 0.0, 0.5,
                 "(A1...Ak)(" + g.vertices[v] + "," + g.vertices[w] +
                     ") = " + std::to_string(A[v][w]));
  return res;
}

bool is_zero_one(const KGraph& g) { return validate_zero_one(g).pass; }

std::vector<int> vertex_string(const KGraph& g, const Morphism& m) {
  require_zero_one(g);
  Degree d = degree_of(g, m);
  // rainbow prefix: components weakly decreasing and within one of each other
  for (int c = 0; c + 1 < g.k; ++c)
    if (d.c[c] < d.c[c + 1])
      throw DomainError("path degree " + d.str() + " is not a rainbow prefix");
  if (g.k > 1 && d.c[0] - d.c[g.k - 1] > 1)
    throw DomainError("path degree " + d.str() + " is not a rainbow prefix");

  std::vector<int> labels;
  labels.push_back(m.range);
  for (int e : m.edges) labels.push_back(g.edge(e).source);
  return labels;
}

double EmbeddingCell::value() const {
  return static_cast<double>(numerator) / std::pow(static_cast<double>(base), power);
}

double EmbeddingCell::width() const {
  return std::pow(static_cast<double>(base), -power);
}

bool EmbeddingCell::disjoint_from(const EmbeddingCell& other) const {
  // compare [num, num+1) / base^power intervals exactly over base^max
  int p = std::max(power, other.power);
  long long a0 = numerator * ipow(base, p - power);
  long long a1 = (numerator + 1) * ipow(base, p - power);
  long long b0 = other.numerator * ipow(base, p - other.power);
  long long b1 = (other.numerator + 1) * ipow(base, p - other.power);
  return a1 <= b0 || b1 <= a0;
}

bool EmbeddingCell::contains(const EmbeddingCell& other) const {
  if (other.power < power) return false;
  long long scale = ipow(base, other.power - power);
  return numerator * scale <= other.numerator &&
         (numerator + 1) * scale >= other.numerator + 1;
}

EmbeddingCell psi_cell(const KGraph& g, const Morphism& m) {
  std::vector<int> labels = vertex_string(g, m);
  EmbeddingCell cell;
  cell.base = g.num_vertices();
  cell.power = static_cast<int>(labels.size());
  cell.numerator = 0;
  for (int lab : labels) {
    if (cell.numerator > (std::numeric_limits<long long>::max() - lab) / cell.base)
      throw DomainError("embedding cell numerator overflows; reduce the depth");
    cell.numerator = cell.numerator * cell.base + lab;
  }
  return cell;
}

double hausdorff_dimension(const KGraph& g, const PFData& pf) {
  require_zero_one(g);
  if (!is_strongly_connected(g))
    throw DomainError("the dimension formula requires a strongly connected graph");
  double log_rho = 0;
  for (double r : pf.rho) log_rho += std::log(r);
  if (log_rho <= 0) return 0.0;  // rho = (1,...,1): a single point
  return log_rho / (g.k * std::log(static_cast<double>(g.num_vertices())));
}

long long admissible_string_count(const KGraph& g, int length) {
  const int n = g.num_vertices();
  std::vector<long long> u(n, 1);  // suffix counts
  for (int t = length - 1; t >= 1; --t) {
    int color = (t - 1) % g.k;
    std::vector<long long> next(n, 0);
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) next[v] += g.A[color][v][w] * u[w];
    u = next;
  }
  long long total = 0;
  for (long long v : u) total += v;
  return total;
}

double box_counting_estimate(const KGraph& g, int depth) {
  require_zero_one(g);
  if (depth < 2) throw DomainError("box-counting depth must be >= 2");
  const double logN = std::log(static_cast<double>(g.num_vertices()));
  std::vector<double> xs, ys;
  for (int j = 1; j <= depth; ++j) {
    int L = j * g.k;
    xs.push_back(L * logN);
    ys.push_back(std::log(static_cast<double>(admissible_string_count(g, L))));
  }
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xm += xs[i];
    ym += ys[i];
  }
  xm /= xs.size();
  ym /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - xm) * (ys[i] - ym);
    den += (xs[i] - xm) * (xs[i] - xm);
  }
  if (den == 0) return 0.0;  // N = 1: every box scale coincides
  return num / den;
}

void export_pointcloud(const KGraph& g, const PFData& pf, int depth, std::ostream& out) {
  require_zero_one(g);
  if (depth < 0) throw DomainError("depth must be >= 0");
  out << "path_id,value_numerator,denominator_power,measure\n";
  std::ostringstream line;
  line.precision(17);
  for (const Morphism& m : enumerate_paths(g, Degree::constant(g.k, depth))) {
    EmbeddingCell cell = psi_cell(g, m);
    line.str("");
    line << path_id(g, m) << "," << cell.numerator << "," << cell.power << ","
         << cylinder_measure(g, pf, m) << "\n";
    out << line.str();
  }
}

void export_pointcloud_file(const KGraph& g, const PFData& pf, int depth,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open '" + path + "' for writing");
  export_pointcloud(g, pf, depth, out);
  if (!out.good()) throw DomainError("write failure on '" + path + "'");
}

}  // namespace kgr
