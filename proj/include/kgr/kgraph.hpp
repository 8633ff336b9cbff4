#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgr/degree.hpp"
#include "kgr/errors.hpp"

namespace kgr {

using Matrix = std::vector<std::vector<long long>>;

struct Edge {
  std::string id;
  int color = 0;   // 0-based internally; documents use 1..k
  int source = 0;  // vertex index
  int range = 0;   // vertex index
};

// The bijective pairing between composable i-then-j and j-then-i
// two-edge paths, i < j.  Edges are global indices; each pair is stored
// range-first: the first edge of a pair is the factor at the range end.
struct FactorizationSquare {
  int color_i = 0, color_j = 0;
  int ij_first = 0, ij_second = 0;  // color i edge, then color j edge
  int ji_first = 0, ji_second = 0;  // color j edge, then color i edge
};

// A finite k-graph: vertices in declaration order, per-color edge lists
// sorted by id, the factorization squares, and the derived vertex
// matrices A_c with A_c(v,w) = #(color-c edges with range v, source w).
class KGraph {
 public:
  int k = 0;
  std::vector<std::string> vertices;
  std::vector<std::vector<Edge>> edges;  // [color], sorted by id
  std::vector<FactorizationSquare> squares;
  std::vector<Matrix> A;  // [color][range][source]

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return color_offset_.empty() ? 0 : total_edges_; }

  const Edge& edge(int global) const {
    int c = color_of(global);
    return edges[c][global - color_offset_[c]];
  }
  int color_of(int global) const {
    int c = 0;
    while (c + 1 < k && global >= color_offset_[c + 1]) ++c;
    return c;
  }
  int global_index(int color, int local) const { return color_offset_[color] + local; }

  int vertex_index(const std::string& name) const;

  // Edges of a given color with the given range vertex, sorted by id.
  const std::vector<int>& in_edges(int color, int vertex) const {
    return in_edges_[color][vertex];
  }

  // Applies the factorization square to an adjacent bicolored pair
  // (a at the range end, b at the source end); returns the unique
  // color-swapped pair with the same range and source.
  std::pair<int, int> swap_pair(int a, int b) const;

  void build_derived();  // matrices, offsets, swap table; called by loaders

 private:
  std::vector<int> color_offset_;
  int total_edges_ = 0;
  std::vector<std::vector<std::vector<int>>> in_edges_;
  std::unordered_map<std::uint64_t, std::pair<int, int>> swap_;
};

// Parses and fully validates a k-graph document (see README for the
// schema).  "squares": "auto" derives the square set when it is forced.
KGraph load_kgraph(const std::string& json_text);
KGraph load_kgraph_file(const std::string& path);

// Derives the unique square set of a skeleton when every pairing class
// has at most one candidate; throws ValidationError on ambiguity.
std::vector<FactorizationSquare> derive_squares_unique(const KGraph& g);

// Full invariant suite: commuting matrices, square completeness and
// bijectivity, the hexagon condition for k >= 3, and no sources.
void validate_kgraph(const KGraph& g);

}  // namespace kgr
