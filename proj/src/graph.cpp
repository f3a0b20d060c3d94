#include "socnet/graph.hpp"

#include <algorithm>
#include <limits>

#include "socnet/error.hpp"

namespace socnet {

SocialGraph SocialGraph::from_indexed_edges(std::vector<std::string> handles,
                                            std::span<const IndexedEdge> edges) {
  if (handles.size() >= std::numeric_limits<NodeId>::max()) {
    throw InvalidEdgeError("too many nodes");
  }
  SocialGraph g;
  g.index_.reserve(handles.size());
  for (std::size_t i = 0; i < handles.size(); ++i) {
    if (handles[i].empty()) throw InvalidEdgeError("empty node handle");
    if (!g.index_.emplace(handles[i], static_cast<NodeId>(i)).second) {
      throw InvalidEdgeError("duplicate node handle '" + handles[i] + "'");
    }
  }
  const std::size_t n = handles.size();
  g.handles_ = std::move(handles);

  std::vector<IndexedEdge> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw InvalidEdgeError("edge endpoint out of range");
    if (e.u == e.v) throw InvalidEdgeError("self-loop on '" + g.handles_[e.u] + "'");
    if (e.weight == 0) throw InvalidEdgeError("zero-weight edge");
    canon.push_back(e.u < e.v ? e : IndexedEdge{e.v, e.u, e.weight});
  }
  std::sort(canon.begin(), canon.end(), [](const IndexedEdge& x, const IndexedEdge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  std::vector<IndexedEdge> merged;
  merged.reserve(canon.size());
  for (const auto& e : canon) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : merged) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.targets_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // `merged` is sorted by (u, v) with u < v: filling rows in this order leaves
  // each row sorted, since row x receives its smaller neighbours (as v) before
  // its larger ones (as u), and each group arrives in ascending order.
  for (const auto& e : merged) {
    g.targets_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.weight;
  }
  for (const auto& e : merged) {
    g.targets_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.weight;
  }
  g.edge_count_ = merged.size();
  return g;
}

std::optional<NodeId> SocialGraph::find(std::string_view handle) const {
  const auto it = index_.find(std::string(handle));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<InteractionEdge> SocialGraph::edges() const {
  std::vector<InteractionEdge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    const auto nbrs = neighbors(u);
    const auto w = weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const NodeId v = nbrs[k];
      if (v <= u) continue;
      const auto& hu = handles_[u];
      const auto& hv = handles_[v];
      if (hu < hv) {
        out.push_back({hu, hv, w[k]});
      } else {
        out.push_back({hv, hu, w[k]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool equivalent(const SocialGraph& a, const SocialGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::string> ha(a.handles().begin(), a.handles().end());
  std::vector<std::string> hb(b.handles().begin(), b.handles().end());
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  return ha == hb && a.edges() == b.edges();
}

SocialGraph build_graph(std::span<const InteractionEdge> edges,
                        std::span<const std::string> isolated) {
  std::vector<std::string> handles;
  std::unordered_map<std::string, NodeId> index;
  auto intern = [&](const std::string& h) -> NodeId {
    if (h.empty()) throw InvalidEdgeError("empty handle in edge list");
    auto [it, inserted] = index.emplace(h, static_cast<NodeId>(handles.size()));
    if (inserted) handles.push_back(h);
    return it->second;
  };
  std::vector<SocialGraph::IndexedEdge> indexed;
  indexed.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.a == e.b) throw InvalidEdgeError("self-loop edge on '" + e.a + "'");
    if (e.weight == 0) throw InvalidEdgeError("zero-weight edge " + e.a + "-" + e.b);
    const NodeId u = intern(e.a);
    const NodeId v = intern(e.b);
    indexed.push_back({u, v, e.weight});
  }
  for (const auto& h : isolated) intern(h);
  return SocialGraph::from_indexed_edges(std::move(handles), indexed);
}

SocialGraph induced_subgraph(const SocialGraph& g, std::span<const NodeId> keep) {
  constexpr NodeId kDropped = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> remap(g.node_count(), kDropped);
  std::vector<std::string> handles;
  handles.reserve(keep.size());
  for (NodeId v : keep) {
    remap[v] = static_cast<NodeId>(handles.size());
    handles.push_back(g.handle(v));
  }
  std::vector<SocialGraph::IndexedEdge> edges;
  for (NodeId u : keep) {
    const auto nbrs = g.neighbors(u);
    const auto w = g.weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] > u && remap[nbrs[k]] != kDropped) {
        edges.push_back({remap[u], remap[nbrs[k]], w[k]});
      }
    }
  }
  return SocialGraph::from_indexed_edges(std::move(handles), edges);
}

SocialGraph remove_nodes(const SocialGraph& g, const std::set<std::string>& handles) {
  std::vector<bool> drop(g.node_count(), false);
  for (const auto& h : handles) {
    if (auto v = g.find(h)) drop[*v] = true;
  }
  std::vector<NodeId> keep;
  keep.reserve(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!drop[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

std::size_t ComponentPartition::largest() const noexcept {
  std::size_t best = 0;
  for (auto s : sizes) best = std::max(best, s);
  return best;
}

ComponentPartition components(const SocialGraph& g) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  ComponentPartition p;
  p.component_id.assign(g.node_count(), kUnset);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  for (NodeId root = 0; root < g.node_count(); ++root) {
    if (p.component_id[root] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(p.sizes.size());
    queue.clear();
    queue.push_back(root);
    p.component_id[root] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId w : g.neighbors(queue[head])) {
        if (p.component_id[w] == kUnset) {
          p.component_id[w] = id;
          queue.push_back(w);
        }
      }
    }
    p.sizes.push_back(queue.size());
  }
  return p;
}

SocialGraph giant_component(const SocialGraph& g) {
  if (g.empty()) throw EmptyGraphError("giant component of an empty graph");
  const ComponentPartition p = components(g);
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < p.count(); ++c) {
    if (p.sizes[c] > p.sizes[best]) best = c;
  }
  std::vector<NodeId> keep;
  keep.reserve(p.sizes[best]);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (p.component_id[v] == best) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

}  // namespace socnet
