#include "kgr/morphism.hpp"

#include <algorithm>
#include <queue>

namespace kgr {

Morphism identity_at(int vertex) {
  Morphism m;
  m.range = vertex;
  return m;
}

int source_of(const KGraph& g, const Morphism& m) {
  return m.edges.empty() ? m.range : g.edge(m.edges.back()).source;
}

Degree degree_of(const KGraph& g, const Morphism& m) {
  Degree d = Degree::zero(g.k);
  for (int e : m.edges) d.c[g.edge(e).color] += 1;
  return d;
}

std::vector<int> canonical_color_pattern(const Degree& d) {
  std::vector<int> pattern;
  int blocks = *std::max_element(d.c.begin(), d.c.end());
  for (int j = 1; j <= blocks; ++j)
    for (int c = 0; c < d.k(); ++c)
      if (d.c[c] >= j) pattern.push_back(c);
  return pattern;
}

namespace {

// Rewrites a composable edge sequence in place until its color sequence
// matches the target pattern, using one square per adjacent swap.  The
// factorization property makes the result independent of swap order.
void rewrite_to_pattern(const KGraph& g, std::vector<int>& seq, const std::vector<int>& target) {
  for (std::size_t t = 0; t < seq.size(); ++t) {
    if (g.edge(seq[t]).color == target[t]) continue;
    std::size_t u = t + 1;
    while (u < seq.size() && g.edge(seq[u]).color != target[t]) ++u;
    if (u == seq.size()) throw DomainError("internal: color pattern mismatch in rewrite");
    for (std::size_t w = u; w > t; --w) {
      auto [x, y] = g.swap_pair(seq[w - 1], seq[w]);
      seq[w - 1] = x;
      seq[w] = y;
    }
  }
}

void check_composable(const KGraph& g, int range, const std::vector<int>& seq) {
  int at = range;
  for (int e : seq) {
    if (g.edge(e).range != at)
      throw DomainError("edge sequence is not composable at edge '" + g.edge(e).id + "'");
    at = g.edge(e).source;
  }
}

}  // namespace

Morphism make_morphism(const KGraph& g, int range, std::vector<int> edge_seq) {
  check_composable(g, range, edge_seq);
  Degree d = Degree::zero(g.k);
  for (int e : edge_seq) d.c[g.edge(e).color] += 1;
  rewrite_to_pattern(g, edge_seq, canonical_color_pattern(d));
  Morphism m;
  m.range = range;
  m.edges = std::move(edge_seq);
  return m;
}

Morphism compose(const KGraph& g, const Morphism& a, const Morphism& b) {
  if (source_of(g, a) != b.range)
    throw DomainError("paths are not composable: s(first) != r(second)");
  std::vector<int> seq = a.edges;
  seq.insert(seq.end(), b.edges.begin(), b.edges.end());
  return make_morphism(g, a.range, std::move(seq));
}

std::pair<Morphism, Morphism> factor(const KGraph& g, const Morphism& lambda, const Degree& m) {
  Degree d = degree_of(g, lambda);
  if (!leq(m, d)) throw DomainError("factor degree exceeds the path degree");
  Degree rest = d - m;
  std::vector<int> target = canonical_color_pattern(m);
  std::vector<int> tail = canonical_color_pattern(rest);
  target.insert(target.end(), tail.begin(), tail.end());
  std::vector<int> seq = lambda.edges;
  rewrite_to_pattern(g, seq, target);

  std::size_t cut = static_cast<std::size_t>(m.total());
  Morphism mu, nu;
  mu.range = lambda.range;
  mu.edges.assign(seq.begin(), seq.begin() + cut);
  nu.range = mu.edges.empty() ? lambda.range : g.edge(mu.edges.back()).source;
  nu.edges.assign(seq.begin() + cut, seq.end());
  return {mu, nu};
}

Morphism segment(const KGraph& g, const Morphism& lambda, const Degree& a, const Degree& b) {
  return factor(g, factor(g, lambda, b).first, a).second;
}

bool for_each_path(const KGraph& g, const Degree& d, std::optional<int> range,
                   const std::function<bool(const Morphism&)>& fn) {
  std::vector<int> pattern = canonical_color_pattern(d);
  std::vector<int> stack(pattern.size());
  // DFS over composable sequences with the canonical color pattern; the
  // per-color edge lists are id-sorted, so emission order is lexicographic.
  std::function<bool(std::size_t, int, int)> walk = [&](std::size_t pos, int root,
                                                        int at) -> bool {
    if (pos == pattern.size()) {
      Morphism m;
      m.range = root;
      m.edges = stack;
      return fn(m);
    }
    for (int e : g.in_edges(pattern[pos], at)) {
      stack[pos] = e;
      if (!walk(pos + 1, root, g.edge(e).source)) return false;
    }
    return true;
  };
  if (range) return walk(0, *range, *range);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!walk(0, v, v)) return false;
  return true;
}

std::vector<Morphism> enumerate_paths(const KGraph& g, const Degree& d, std::optional<int> range,
                                      std::optional<int> source) {
  std::vector<Morphism> out;
  for_each_path(g, d, range, [&](const Morphism& m) {
    if (!source || source_of(g, m) == *source) out.push_back(m);
    return true;
  });
  return out;
}

long long count_paths(const KGraph& g, const Degree& d, std::optional<int> range,
                      std::optional<int> source) {
  long long n = 0;
  for_each_path(g, d, range, [&](const Morphism& m) {
    if (!source || source_of(g, m) == *source) ++n;
    return true;
  });
  return n;
}

std::vector<std::pair<Morphism, Morphism>> lambda_min(const KGraph& g, const Morphism& mu,
                                                      const Morphism& nu) {
  std::vector<std::pair<Morphism, Morphism>> out;
  if (mu.range != nu.range) return out;
  Degree dmu = degree_of(g, mu), dnu = degree_of(g, nu);
  Degree j = join(dmu, dnu);
  for (const Morphism& eta : enumerate_paths(g, j - dmu, source_of(g, mu))) {
    Morphism lambda = compose(g, mu, eta);
    auto [head, zeta] = factor(g, lambda, dnu);
    if (head == nu) out.push_back({eta, zeta});
  }
  return out;
}

bool is_strongly_connected(const KGraph& g) {
  const int n = g.num_vertices();
  // arcs run source -> range; v Lambda w != empty iff w reaches v
  std::vector<std::vector<int>> adj(n);
  for (int c = 0; c < g.k; ++c)
    for (const Edge& e : g.edges[c]) adj[e.source].push_back(e.range);
  for (int start = 0; start < n; ++start) {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    if (reached != n) return false;
  }
  return true;
}

AperiodicityResult aperiodicity_probe(const KGraph& g, int depth_bound) {
  if (depth_bound < 1) throw DomainError("depth_bound must be >= 1");
  AperiodicityResult res;
  res.depth_bound = depth_bound;
  Degree window = Degree::constant(g.k, depth_bound);
  std::vector<Degree> shifts = degrees_up_to(window);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (const Degree& m : shifts) {
      for (const Degree& n : shifts) {
        if (m == n || (m.c > n.c)) continue;  // unordered pairs, lex order
        Degree probe = join(m, n) + window;
        bool agrees = for_each_path(g, probe, v, [&](const Morphism& path) {
          return segment(g, path, m, m + window) == segment(g, path, n, n + window);
        });
        if (agrees) {
          res.periodic = true;
          res.vertex = v;
          res.m = m;
          res.n = n;
          return res;
        }
      }
    }
  }
  return res;
}

std::string path_id(const KGraph& g, const Morphism& m) {
  if (m.is_identity()) return "v:" + g.vertices[m.range];
  std::string s;
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    if (i) s += ".";
    s += g.edge(m.edges[i]).id;
  }
  return s;
}

Morphism parse_path_id(const KGraph& g, const std::string& id) {
  if (id.rfind("v:", 0) == 0) return identity_at(g.vertex_index(id.substr(2)));
  std::vector<int> seq;
  std::size_t pos = 0;
  while (pos <= id.size()) {
    std::size_t dot = id.find('.', pos);
    std::string part = id.substr(pos, dot == std::string::npos ? dot : dot - pos);
    bool found = false;
    for (int c = 0; c < g.k && !found; ++c)
      for (int t = 0; t < static_cast<int>(g.edges[c].size()); ++t)
        if (g.edges[c][t].id == part) {
          seq.push_back(g.global_index(c, t));
          found = true;
          break;
        }
    if (!found) throw DomainError("unknown edge id '" + part + "' in path id");
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (seq.empty()) throw DomainError("empty path id");
  int range = g.edge(seq.front()).range;
  return make_morphism(g, range, std::move(seq));
}

bool path_lex_less(const KGraph& g, const Morphism& a, const Morphism& b) {
  std::size_t n = std::min(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& x = g.edge(a.edges[i]).id;
    const std::string& y = g.edge(b.edges[i]).id;
    if (x != y) return x < y;
  }
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  return a.range < b.range;
}

}  // namespace kgr
