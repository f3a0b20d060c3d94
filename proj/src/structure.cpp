#include <algorithm>
#include <limits>

#include "socnet/metrics.hpp"
#include "sweep.hpp"

namespace socnet {

std::vector<double> local_clustering(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  // Orient each edge towards the endpoint of higher (degree, id) rank so every
  // triangle is found exactly once from its lowest-ranked corner.
  auto ranks_below = [&](NodeId a, NodeId b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::vector<NodeId>> forward(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (ranks_below(u, v)) forward[u].push_back(v);
    }
  }
  std::vector<std::uint64_t> triangles(n, 0);
  std::vector<bool> mark(n, false);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : forward[u]) mark[v] = true;
    for (NodeId v : forward[u]) {
      for (NodeId w : forward[v]) {
        if (mark[w]) {
          ++triangles[u];
          ++triangles[v];
          ++triangles[w];
        }
      }
    }
    for (NodeId v : forward[u]) mark[v] = false;
  }
  std::vector<double> cc(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const auto d = static_cast<double>(g.degree(v));
    if (g.degree(v) >= 2) cc[v] = 2.0 * static_cast<double>(triangles[v]) / (d * (d - 1.0));
  }
  return cc;
}

GlobalMetrics global_metrics(const SocialGraph& g) {
  GlobalMetrics m;
  const std::size_t n = g.node_count();
  if (n >= 2) {
    m.density = 2.0 * static_cast<double>(g.edge_count()) /
                (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  if (n == 0) return m;

  const ComponentPartition parts = components(g);
  m.component_count = parts.count();
  m.giant_size = parts.largest();

  const std::vector<double> cc = local_clustering(g);
  double sum = 0.0;
  for (double c : cc) sum += c;
  m.avg_clustering = sum / static_cast<double>(n);

  const SocialGraph giant = giant_component(g);
  if (giant.node_count() >= 2) {
    const auto sweep = detail::run_sweep(giant, {.betweenness = false, .distances = true});
    m.diameter = *std::max_element(sweep.eccentricity.begin(), sweep.eccentricity.end());
  }
  return m;
}

CutStructure cut_structure(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();
  std::vector<std::uint32_t> disc(n, kUnseen);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<NodeId> parent(n, kNoParent);
  std::vector<std::size_t> next_edge(n, 0);
  std::vector<bool> is_cut(n, false);
  std::vector<NodeId> stack;
  CutStructure out;
  std::uint32_t timer = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] != kUnseen) continue;
    disc[root] = low[root] = timer++;
    std::size_t root_children = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      const auto nbrs = g.neighbors(v);
      if (next_edge[v] < nbrs.size()) {
        const NodeId w = nbrs[next_edge[v]++];
        if (disc[w] == kUnseen) {
          parent[w] = v;
          disc[w] = low[w] = timer++;
          if (v == root) ++root_children;
          stack.push_back(w);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      stack.pop_back();
      const NodeId p = parent[v];
      if (p == kNoParent) continue;
      low[p] = std::min(low[p], low[v]);
      if (low[v] > disc[p]) out.bridges.emplace_back(std::min(p, v), std::max(p, v));
      if (p != root && low[v] >= disc[p]) is_cut[p] = true;
    }
    if (root_children >= 2) is_cut[root] = true;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (is_cut[v]) out.articulation_points.push_back(v);
  }
  std::sort(out.bridges.begin(), out.bridges.end());
  return out;
}

std::set<std::string> articulation_points(const SocialGraph& g) {
  std::set<std::string> out;
  for (NodeId v : cut_structure(g).articulation_points) out.insert(g.handle(v));
  return out;
}

std::set<std::pair<std::string, std::string>> bridge_edges(const SocialGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : cut_structure(g).bridges) {
    const auto& a = g.handle(u);
    const auto& b = g.handle(v);
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}

FragmentationReport what_if_removal(const SocialGraph& g, const std::set<std::string>& handles) {
  FragmentationReport r;
  r.removed = handles;
  for (const auto& h : handles) {
    if (!g.find(h)) r.missing.insert(h);
  }
  const ComponentPartition before = components(g);
  const SocialGraph rest = remove_nodes(g, handles);
  const ComponentPartition after = components(rest);
  r.components_before = before.count();
  r.components_after = after.count();
  r.giant_before = before.largest();
  r.giant_after = after.largest();
  for (NodeId v = 0; v < rest.node_count(); ++v) {
    const NodeId original = *g.find(rest.handle(v));
    if (before.sizes[before.component_id[original]] >= 2 &&
        after.sizes[after.component_id[v]] == 1) {
      ++r.newly_disconnected;
    }
  }
  return r;
}

}  // namespace socnet
