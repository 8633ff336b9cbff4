#include "kgr/kgraph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kgr/morphism.hpp"

namespace kgr {

namespace {

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

int KGraph::vertex_index(const std::string& name) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i] == name) return i;
  throw ValidationError("unknown vertex '" + name + "'");
}

std::pair<int, int> KGraph::swap_pair(int a, int b) const {
  auto it = swap_.find(pair_key(a, b));
  if (it == swap_.end())
    throw ValidationError("no factorization square for pair (" + edge(a).id + ", " + edge(b).id +
                          ")");
  return it->second;
}

void KGraph::build_derived() {
  const int n = num_vertices();
  color_offset_.assign(k, 0);
  total_edges_ = 0;
  for (int c = 0; c < k; ++c) {
    color_offset_[c] = total_edges_;
    total_edges_ += static_cast<int>(edges[c].size());
  }

  A.assign(k, Matrix(n, std::vector<long long>(n, 0)));
  in_edges_.assign(k, std::vector<std::vector<int>>(n));
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < static_cast<int>(edges[c].size()); ++i) {
      const Edge& e = edges[c][i];
      A[c][e.range][e.source] += 1;
      in_edges_[c][e.range].push_back(global_index(c, i));
    }
  }

  swap_.clear();
  for (const auto& sq : squares) {
    swap_[pair_key(sq.ij_first, sq.ij_second)] = {sq.ji_first, sq.ji_second};
    swap_[pair_key(sq.ji_first, sq.ji_second)] = {sq.ij_first, sq.ij_second};
  }
}

std::vector<FactorizationSquare> derive_squares_unique(const KGraph& g) {
  std::vector<FactorizationSquare> out;
  const int n = g.num_vertices();
  for (int ci = 0; ci < g.k; ++ci) {
    for (int cj = ci + 1; cj < g.k; ++cj) {
      // bucket composable two-edge paths by (range, source)
      std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> ij, ji;
      auto collect = [&](int ca, int cb, auto& bucket) {
        for (int ia = 0; ia < static_cast<int>(g.edges[ca].size()); ++ia) {
          const Edge& ea = g.edges[ca][ia];
          for (int ib = 0; ib < static_cast<int>(g.edges[cb].size()); ++ib) {
            const Edge& eb = g.edges[cb][ib];
            if (ea.source != eb.range) continue;
            bucket[{ea.range, eb.source}].push_back(
                {g.global_index(ca, ia), g.global_index(cb, ib)});
          }
        }
      };
      collect(ci, cj, ij);
      collect(cj, ci, ji);
      for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
          auto a = ij.find({v, w});
          auto b = ji.find({v, w});
          std::size_t na = a == ij.end() ? 0 : a->second.size();
          std::size_t nb = b == ji.end() ? 0 : b->second.size();
          if (na != nb)
            throw ValidationError("matrices do not commute: colors (" + std::to_string(ci + 1) +
                                  "," + std::to_string(cj + 1) + ") between '" + g.vertices[v] +
                                  "' and '" + g.vertices[w] + "'");
          if (na == 0) continue;
          if (na > 1)
            throw ValidationError(
                "ambiguous factorization squares for colors (" + std::to_string(ci + 1) + "," +
                std::to_string(cj + 1) + ") between vertices '" + g.vertices[v] + "' and '" +
                g.vertices[w] + "': " + std::to_string(na) + "-to-" + std::to_string(nb) +
                " pairing is not forced");
          FactorizationSquare sq;
          sq.color_i = ci;
          sq.color_j = cj;
          sq.ij_first = a->second[0].first;
          sq.ij_second = a->second[0].second;
          sq.ji_first = b->second[0].first;
          sq.ji_second = b->second[0].second;
          out.push_back(sq);
        }
      }
    }
  }
  return out;
}

namespace {

void check_square_shape(const KGraph& g, const FactorizationSquare& sq) {
  const Edge& a = g.edge(sq.ij_first);
  const Edge& b = g.edge(sq.ij_second);
  const Edge& c = g.edge(sq.ji_first);
  const Edge& d = g.edge(sq.ji_second);
  if (a.color != sq.color_i || b.color != sq.color_j || c.color != sq.color_j ||
      d.color != sq.color_i)
    throw ValidationError("square edge colors disagree with its color pair");
  if (a.source != b.range || c.source != d.range)
    throw ValidationError("square path not composable: (" + a.id + "," + b.id + ") / (" + c.id +
                          "," + d.id + ")");
  if (a.range != c.range || b.source != d.source)
    throw ValidationError("square sides do not share range and source: (" + a.id + "," + b.id +
                          ")");
}

void check_squares_bijective(const KGraph& g) {
  // every composable bicolored path must appear in exactly one square
  std::map<std::pair<int, int>, int> seen_ij, seen_ji;
  for (const auto& sq : g.squares) {
    check_square_shape(g, sq);
    seen_ij[{sq.ij_first, sq.ij_second}]++;
    seen_ji[{sq.ji_first, sq.ji_second}]++;
  }
  for (const auto& [p, cnt] : seen_ij)
    if (cnt > 1)
      throw ValidationError("bicolored path (" + g.edge(p.first).id + "," + g.edge(p.second).id +
                            ") appears in " + std::to_string(cnt) + " squares");
  for (const auto& [p, cnt] : seen_ji)
    if (cnt > 1)
      throw ValidationError("bicolored path (" + g.edge(p.first).id + "," + g.edge(p.second).id +
                            ") appears in " + std::to_string(cnt) + " squares");
  for (int ca = 0; ca < g.k; ++ca) {
    for (int cb = 0; cb < g.k; ++cb) {
      if (ca == cb) continue;
      for (int ia = 0; ia < static_cast<int>(g.edges[ca].size()); ++ia) {
        for (int ib = 0; ib < static_cast<int>(g.edges[cb].size()); ++ib) {
          const Edge& ea = g.edges[ca][ia];
          const Edge& eb = g.edges[cb][ib];
          if (ea.source != eb.range) continue;
          std::pair<int, int> p{g.global_index(ca, ia), g.global_index(cb, ib)};
          const auto& seen = ca < cb ? seen_ij : seen_ji;
          if (!seen.count(p))
            throw ValidationError("composable bicolored path (" + ea.id + "," + eb.id +
                                  ") is missing from the squares");
        }
      }
    }
  }
}

void check_matrices_commute(const KGraph& g) {
  const int n = g.num_vertices();
  for (int i = 0; i < g.k; ++i) {
    for (int j = i + 1; j < g.k; ++j) {
      for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
          long long ij = 0, ji = 0;
          for (int u = 0; u < n; ++u) {
            ij += g.A[i][v][u] * g.A[j][u][w];
            ji += g.A[j][v][u] * g.A[i][u][w];
          }
          if (ij != ji)
            throw ValidationError("matrices do not commute: (A" + std::to_string(i + 1) + "A" +
                                  std::to_string(j + 1) + ")(" + g.vertices[v] + "," +
                                  g.vertices[w] + ") = " + std::to_string(ij) + " vs " +
                                  std::to_string(ji));
        }
      }
    }
  }
}

void check_no_sources(const KGraph& g) {
  for (int c = 0; c < g.k; ++c) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.in_edges(c, v).empty())
        throw ValidationError("vertex '" + g.vertices[v] + "' has no incoming edge of color " +
                              std::to_string(c + 1));
    }
  }
}

// Swaps a tricolored 3-edge path to the reversed color order along both
// sequences of adjacent transpositions; both must agree.
void check_hexagon(const KGraph& g) {
  if (g.k < 3) return;
  auto swap_at = [&](std::array<int, 3> e, int pos) {
    auto [x, y] = g.swap_pair(e[pos], e[pos + 1]);
    e[pos] = x;
    e[pos + 1] = y;
    return e;
  };
  for (int ci = 0; ci < g.k; ++ci)
    for (int cj = ci + 1; cj < g.k; ++cj)
      for (int cl = cj + 1; cl < g.k; ++cl)
        for (int i1 = 0; i1 < static_cast<int>(g.edges[ci].size()); ++i1)
          for (int i2 = 0; i2 < static_cast<int>(g.edges[cj].size()); ++i2) {
            if (g.edges[ci][i1].source != g.edges[cj][i2].range) continue;
            for (int i3 = 0; i3 < static_cast<int>(g.edges[cl].size()); ++i3) {
              if (g.edges[cj][i2].source != g.edges[cl][i3].range) continue;
              std::array<int, 3> p{g.global_index(ci, i1), g.global_index(cj, i2),
                                   g.global_index(cl, i3)};
              // route 1: swap (1,2), (0,1), (1,2)
              auto r1 = swap_at(swap_at(swap_at(p, 1), 0), 1);
              // route 2: swap (0,1), (1,2), (0,1)
              auto r2 = swap_at(swap_at(swap_at(p, 0), 1), 0);
              if (r1 != r2)
                throw ValidationError("associativity (hexagon) failure on tricolored path (" +
                                      g.edges[ci][i1].id + "," + g.edges[cj][i2].id + "," +
                                      g.edges[cl][i3].id + ")");
            }
          }
}

}  // namespace

void validate_kgraph(const KGraph& g) {
  check_matrices_commute(g);
  check_squares_bijective(g);
  check_hexagon(g);
  check_no_sources(g);
}

KGraph load_kgraph(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("document must be a JSON object");

  KGraph g;
  try {
    g.k = doc.at("k").get<int>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("missing or invalid field 'k'");
  }
  if (g.k < 1) throw ValidationError("'k' must be >= 1");

  if (!doc.contains("vertices") || !doc["vertices"].is_array() || doc["vertices"].empty())
    throw ValidationError("'vertices' must be a nonempty array of names");
  std::set<std::string> seen_names;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ValidationError("'vertices' entries must be strings");
    std::string name = v.get<std::string>();
    if (!seen_names.insert(name).second)
      throw ValidationError("duplicate vertex name '" + name + "'");
    g.vertices.push_back(name);
  }

  if (!doc.contains("edges") || !doc["edges"].is_object())
    throw ValidationError("'edges' must be an object keyed by color 1..k");
  g.edges.assign(g.k, {});
  for (int c = 1; c <= g.k; ++c) {
    std::string key = std::to_string(c);
    if (!doc["edges"].contains(key))
      throw ValidationError("'edges' is missing color " + key);
    std::set<std::string> ids;
    for (const auto& e : doc["edges"][key]) {
      Edge ed;
      try {
        ed.id = e.at("id").get<std::string>();
        ed.color = c - 1;
        ed.source = g.vertex_index(e.at("source").get<std::string>());
        ed.range = g.vertex_index(e.at("range").get<std::string>());
      } catch (const nlohmann::json::exception&) {
        throw ValidationError("edge entries need string fields id/source/range");
      }
      if (!ids.insert(ed.id).second)
        throw ValidationError("duplicate edge id '" + ed.id + "' in color " + key);
      g.edges[c - 1].push_back(ed);
    }
    std::sort(g.edges[c - 1].begin(), g.edges[c - 1].end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
  }

  g.build_derived();  // matrices and edge indices; squares still empty

  if (!doc.contains("squares")) throw ValidationError("missing field 'squares'");
  if (doc["squares"].is_string()) {
    if (doc["squares"].get<std::string>() != "auto")
      throw ValidationError("'squares' must be \"auto\" or an array");
    check_matrices_commute(g);  // report commutation failures before ambiguity
    g.squares = derive_squares_unique(g);
  } else if (doc["squares"].is_array()) {
    auto find_edge = [&](int color, const std::string& id) {
      if (color < 0 || color >= g.k)
        throw ValidationError("square color out of range 1..k");
      for (int t = 0; t < static_cast<int>(g.edges[color].size()); ++t)
        if (g.edges[color][t].id == id) return g.global_index(color, t);
      throw ValidationError("square references unknown edge '" + id + "'");
    };
    for (const auto& s : doc["squares"]) {
      FactorizationSquare sq;
      try {
        sq.color_i = s.at("colors").at(0).get<int>() - 1;
        sq.color_j = s.at("colors").at(1).get<int>() - 1;
        sq.ij_first = find_edge(sq.color_i, s.at("path_ij").at(0).get<std::string>());
        sq.ij_second = find_edge(sq.color_j, s.at("path_ij").at(1).get<std::string>());
        sq.ji_first = find_edge(sq.color_j, s.at("path_ji").at(0).get<std::string>());
        sq.ji_second = find_edge(sq.color_i, s.at("path_ji").at(1).get<std::string>());
      } catch (const nlohmann::json::exception&) {
        throw ValidationError("square entries need colors/path_ij/path_ji");
      }
      if (sq.color_i >= sq.color_j)
        throw ValidationError("square color pair must be ordered i < j");
      g.squares.push_back(sq);
    }
  } else {
    throw ValidationError("'squares' must be \"auto\" or an array");
  }

  g.build_derived();
  validate_kgraph(g);
  return g;
}

KGraph load_kgraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_kgraph(ss.str());
}

}  // namespace kgr
