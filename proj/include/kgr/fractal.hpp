#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kgr/measure.hpp"
#include "kgr/morphism.hpp"
#include "kgr/report.hpp"
#include "kgr/spectral.hpp"

namespace kgr {

// Hypotheses for the N-adic embedding: every vertex matrix and their
// product must have {0,1} entries.
CheckResult validate_zero_one(const KGraph& g);
bool is_zero_one(const KGraph& g);

// The vertex string of a rainbow path: the range vertex followed by the
// source of each edge in rainbow order.  Requires the {0,1} hypotheses
// and a square or rainbow-prefix degree.
std::vector<int> vertex_string(const KGraph& g, const Morphism& m);

// N-adic interval of a finite path: value = sum labels[t] N^{-(t+1)},
// width = N^{-L}.  Endpoints are exact integers over N^L.
struct EmbeddingCell {
  long long numerator = 0;  // value = numerator / N^power
  int power = 0;
  int base = 0;  // N

  double value() const;
  double width() const;
  bool disjoint_from(const EmbeddingCell& other) const;
  bool contains(const EmbeddingCell& other) const;
};

EmbeddingCell psi_cell(const KGraph& g, const Morphism& m);

// s = ln(prod_i rho_i) / (k ln N)
double hausdorff_dimension(const KGraph& g, const PFData& pf);

// Least-squares slope of log(admissible string count at length L)
// against log(N^L) over L = k, 2k, ..., k*depth.
double box_counting_estimate(const KGraph& g, int depth);
long long admissible_string_count(const KGraph& g, int length);

// CSV records `path_id,value_numerator,denominator_power,measure` for
// every path of degree (depth,...,depth), lexicographic order.
void export_pointcloud(const KGraph& g, const PFData& pf, int depth, std::ostream& out);
void export_pointcloud_file(const KGraph& g, const PFData& pf, int depth,
                            const std::string& path);

}  // namespace kgr
