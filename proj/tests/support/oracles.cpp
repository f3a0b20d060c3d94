#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace socnet::testing {

SocialGraph to_social(const SmallGraph& g) {
  std::vector<std::string> handles;
  for (int i = 0; i < g.n; ++i) handles.push_back("n" + std::to_string(i));
  std::vector<SocialGraph::IndexedEdge> edges;
  for (auto [u, v] : g.edges) {
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1});
  }
  return SocialGraph::from_indexed_edges(std::move(handles), edges);
}

std::vector<std::vector<int>> all_pairs_distances(const SmallGraph& g) {
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, kInf));
  for (int i = 0; i < g.n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (int& x : row)
      if (x >= kInf) x = -1;
  return d;
}

namespace {

std::vector<std::vector<bool>> adjacency_matrix(const SmallGraph& g) {
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = true;
  return adj;
}

}  // namespace

std::vector<double> brute_betweenness(const SmallGraph& g) {
  std::vector<double> bc(g.n, 0.0);
  if (g.n < 3) return bc;
  const auto adj = adjacency_matrix(g);
  const auto d = all_pairs_distances(g);
  std::vector<int> path;
  for (int s = 0; s < g.n; ++s) {
    for (int t = s + 1; t < g.n; ++t) {
      if (d[s][t] <= 0) continue;
      // enumerate every walk s -> t of length d[s][t] that is a simple path
      std::vector<std::vector<int>> paths;
      std::function<void(int)> extend = [&](int at) {
        if (at == t) {
          if (static_cast<int>(path.size()) - 1 == d[s][t]) paths.push_back(path);
          return;
        }
        if (static_cast<int>(path.size()) - 1 >= d[s][t]) return;
        for (int next = 0; next < g.n; ++next) {
          if (!adj[at][next]) continue;
          if (std::find(path.begin(), path.end(), next) != path.end()) continue;
          path.push_back(next);
          extend(next);
          path.pop_back();
        }
      };
      path = {s};
      extend(s);
      const double total = static_cast<double>(paths.size());
      for (const auto& p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) bc[p[i]] += 1.0 / total;
      }
    }
  }
  const double norm = (g.n - 1.0) * (g.n - 2.0) / 2.0;
  for (double& x : bc) x /= norm;
  return bc;
}

std::vector<double> brute_closeness(const SmallGraph& g) {
  const auto d = all_pairs_distances(g);
  std::vector<double> cc(g.n, 0.0);
  for (int v = 0; v < g.n; ++v) {
    int reach = 0, sum = 0;
    for (int u = 0; u < g.n; ++u) {
      if (u != v && d[v][u] > 0) {
        ++reach;
        sum += d[v][u];
      }
    }
    if (reach > 0) cc[v] = static_cast<double>(reach) / sum;
  }
  return cc;
}

std::vector<double> brute_harmonic(const SmallGraph& g) {
  const auto d = all_pairs_distances(g);
  std::vector<double> h(g.n, 0.0);
  if (g.n < 2) return h;
  for (int v = 0; v < g.n; ++v) {
    for (int u = 0; u < g.n; ++u) {
      if (u != v && d[v][u] > 0) h[v] += 1.0 / d[v][u];
    }
    h[v] /= (g.n - 1.0);
  }
  return h;
}

std::size_t union_find_components(int n, const std::vector<std::pair<int, int>>& edges,
                                  int skip_node, int skip_edge) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (i == skip_edge) continue;
    auto [u, v] = edges[i];
    if (u == skip_node || v == skip_node) continue;
    parent[root(u)] = root(v);
  }
  std::size_t count = 0;
  for (int v = 0; v < n; ++v) {
    if (v != skip_node && root(v) == v) ++count;
  }
  return count;
}

std::set<int> brute_articulation_points(const SmallGraph& g) {
  std::set<int> out;
  const auto base = union_find_components(g.n, g.edges);
  for (int v = 0; v < g.n; ++v) {
    if (union_find_components(g.n, g.edges, v) > base) out.insert(v);
  }
  return out;
}

std::set<std::pair<int, int>> brute_bridges(const SmallGraph& g) {
  std::set<std::pair<int, int>> out;
  const auto base = union_find_components(g.n, g.edges);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    if (union_find_components(g.n, g.edges, -1, i) > base) out.insert(g.edges[i]);
  }
  return out;
}

std::vector<double> brute_clustering(const SmallGraph& g) {
  const auto adj = adjacency_matrix(g);
  std::vector<double> cc(g.n, 0.0);
  for (int v = 0; v < g.n; ++v) {
    int deg = 0, closed = 0;
    for (int a = 0; a < g.n; ++a) deg += adj[v][a];
    for (int a = 0; a < g.n; ++a)
      for (int b = a + 1; b < g.n; ++b)
        if (adj[v][a] && adj[v][b] && adj[a][b]) ++closed;
    if (deg >= 2) cc[v] = closed / (deg * (deg - 1) / 2.0);
  }
  return cc;
}

bool is_connected(const SmallGraph& g) { return union_find_components(g.n, g.edges) <= 1; }

SmallGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  SmallGraph g{n, {}};
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.edges.emplace_back(u, v);
  return g;
}

SmallGraph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  for (;;) {
    SmallGraph g = random_graph(n, p, rng);
    if (is_connected(g)) return g;
  }
}

SmallGraph graph_from_mask(int n, std::uint64_t mask) {
  SmallGraph g{n, {}};
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1U) g.edges.emplace_back(u, v);
  return g;
}

SmallGraph star(int n) {
  SmallGraph g{n, {}};
  for (int v = 1; v < n; ++v) g.edges.emplace_back(0, v);
  return g;
}

SmallGraph path(int n) {
  SmallGraph g{n, {}};
  for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
  return g;
}

SmallGraph cycle(int n) {
  SmallGraph g = path(n);
  if (n >= 3) g.edges.emplace_back(0, n - 1);
  return g;
}

SmallGraph complete(int n) {
  SmallGraph g{n, {}};
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

}  // namespace socnet::testing
