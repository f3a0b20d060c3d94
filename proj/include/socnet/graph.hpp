#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "socnet/ingest.hpp"

namespace socnet {

using NodeId = std::uint32_t;

/// Immutable undirected simple graph over actor handles.
///
/// Adjacency is stored in compressed rows: the neighbours of node i are
/// `targets_[offsets_[i] .. offsets_[i+1])`, sorted ascending, with the edge
/// multiplicity in the parallel `weights_` array. Every edge appears in both
/// endpoint rows.
class SocialGraph {
 public:
  struct IndexedEdge {
    NodeId u;
    NodeId v;
    std::uint64_t weight;
  };

  SocialGraph() : offsets_(1, 0) {}

  /// Builds from dense node indices. Duplicate pairs are merged by summing
  /// weights. Throws InvalidEdgeError on self-loops, zero weights, out-of-range
  /// indices, or duplicate/empty handles.
  static SocialGraph from_indexed_edges(std::vector<std::string> handles,
                                        std::span<const IndexedEdge> edges);

  std::size_t node_count() const noexcept { return handles_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return handles_.empty(); }

  const std::string& handle(NodeId v) const { return handles_[v]; }
  std::span<const std::string> handles() const noexcept { return handles_; }
  std::optional<NodeId> find(std::string_view handle) const;

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const std::uint64_t> weights(NodeId v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Canonical edges (a < b by handle) sorted by (a, b).
  std::vector<InteractionEdge> edges() const;

  /// Same node order, adjacency and weights.
  bool operator==(const SocialGraph& other) const {
    return handles_ == other.handles_ && offsets_ == other.offsets_ &&
           targets_ == other.targets_ && weights_ == other.weights_;
  }

 private:
  std::vector<std::string> handles_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<std::uint64_t> weights_;
  std::size_t edge_count_ = 0;
};

/// Same handle set and same canonical weighted edge list, regardless of node order.
bool equivalent(const SocialGraph& a, const SocialGraph& b);

/// Nodes are indexed in first-appearance order: edge endpoints (a then b, in
/// input order) followed by any `isolated` handles not already present.
SocialGraph build_graph(std::span<const InteractionEdge> edges,
                        std::span<const std::string> isolated = {});

/// Subgraph induced by `keep` (ascending node ids); relative order is preserved.
SocialGraph induced_subgraph(const SocialGraph& g, std::span<const NodeId> keep);

/// Drops the named nodes and their incident edges. Unknown handles are ignored.
SocialGraph remove_nodes(const SocialGraph& g, const std::set<std::string>& handles);

struct ComponentPartition {
  std::vector<std::uint32_t> component_id;  // per node
  std::vector<std::size_t> sizes;           // per component

  std::size_t count() const noexcept { return sizes.size(); }
  std::size_t largest() const noexcept;
};

/// BFS labelling; component ids follow the lowest-index member.
ComponentPartition components(const SocialGraph& g);

/// Induced subgraph of the largest component, ties to the lowest id.
/// Throws EmptyGraphError on an empty graph.
SocialGraph giant_component(const SocialGraph& g);

}  // namespace socnet
