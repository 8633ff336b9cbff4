#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kgr/kgraph.hpp"

#ifndef KGR_FIXTURE_DIR
#define KGR_FIXTURE_DIR "tests/fixtures"
#endif

inline std::string fixture_path(const std::string& name) {
  return std::string(KGR_FIXTURE_DIR) + "/" + name;
}

inline kgr::KGraph load_fixture(const std::string& name) {
  return kgr::load_kgraph_file(fixture_path(name));
}

// Independent integer matrix arithmetic for count oracles.
inline kgr::Matrix mat_identity(int n) {
  kgr::Matrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline kgr::Matrix mat_mul(const kgr::Matrix& a, const kgr::Matrix& b) {
  int n = static_cast<int>(a.size());
  kgr::Matrix c(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

// prod_i A_i^{n_i}
inline kgr::Matrix mat_power_product(const kgr::KGraph& g, const kgr::Degree& d) {
  kgr::Matrix m = mat_identity(g.num_vertices());
  for (int c = 0; c < g.k; ++c)
    for (int t = 0; t < d.c[c]; ++t) m = mat_mul(m, g.A[c]);
  return m;
}

inline long long mat_entry_sum(const kgr::Matrix& m) {
  long long s = 0;
  for (const auto& row : m)
    for (long long v : row) s += v;
  return s;
}
