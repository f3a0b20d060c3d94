#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet {

enum class Metric : std::uint8_t { degree, betweenness, closeness };

std::string_view to_string(Metric m) noexcept;

/// `component`: (c-1)/sum of distances inside the node's component.
/// `harmonic`: sum of 1/d over reachable nodes, divided by (n-1).
enum class ClosenessVariant : std::uint8_t { component, harmonic };

std::string_view to_string(ClosenessVariant v) noexcept;

/// One metric value per graph node, aligned with `handles`.
struct CentralityMap {
  Metric metric = Metric::degree;
  std::vector<std::string> handles;
  std::vector<double> values;
  bool normalized = false;
};

struct CentralityOptions {
  /// Worker threads for the shortest-path sweeps. Results do not depend on it.
  unsigned jobs = 1;
  ClosenessVariant closeness = ClosenessVariant::component;
};

/// Raw neighbour count; edge weights are ignored.
CentralityMap degree_centrality(const SocialGraph& g);

/// Brandes accumulation over unit-length shortest paths, counted over
/// unordered pairs and divided by (n-1)(n-2)/2 with n the whole-graph size.
/// All zeros when n < 3.
CentralityMap betweenness_centrality(const SocialGraph& g, unsigned jobs = 1);

CentralityMap closeness_centrality(const SocialGraph& g,
                                   ClosenessVariant variant = ClosenessVariant::component,
                                   unsigned jobs = 1);

struct CentralitySet {
  CentralityMap degree;
  CentralityMap betweenness;
  CentralityMap closeness;
};

/// All three centralities; betweenness and closeness share one BFS per source.
CentralitySet all_centralities(const SocialGraph& g, const CentralityOptions& options = {});

struct GlobalMetrics {
  double density = 0.0;
  std::size_t diameter = 0;  // of the giant component
  double avg_clustering = 0.0;
  std::size_t component_count = 0;
  std::size_t giant_size = 0;
};

GlobalMetrics global_metrics(const SocialGraph& g);

/// Local clustering coefficient per node; 0 for degree < 2.
std::vector<double> local_clustering(const SocialGraph& g);

/// Cut vertices and bridges from one iterative low-link DFS.
struct CutStructure {
  std::vector<NodeId> articulation_points;           // ascending
  std::vector<std::pair<NodeId, NodeId>> bridges;    // (u < v), ascending
};

CutStructure cut_structure(const SocialGraph& g);

std::set<std::string> articulation_points(const SocialGraph& g);

/// Bridges as canonical (a < b) handle pairs.
std::set<std::pair<std::string, std::string>> bridge_edges(const SocialGraph& g);

struct FragmentationReport {
  std::set<std::string> removed;
  /// Requested handles that were not in the graph.
  std::set<std::string> missing;
  std::size_t components_before = 0;
  std::size_t components_after = 0;
  std::size_t giant_before = 0;
  std::size_t giant_after = 0;
  /// Surviving nodes that were in a component of size >= 2 and end up alone.
  std::size_t newly_disconnected = 0;
};

FragmentationReport what_if_removal(const SocialGraph& g, const std::set<std::string>& handles);

}  // namespace socnet
