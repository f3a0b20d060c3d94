#pragma once

#include <cstdint>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet::detail {

struct SweepRequest {
  bool betweenness = false;
  bool distances = false;  // distance sums, level histograms, eccentricities
  unsigned jobs = 1;
};

/// Per-node results of running one BFS from every node.
///
/// A degree-1 node whose neighbour has degree >= 2 never runs its own BFS:
/// its shortest paths are its neighbour's prefixed by one hop, so its
/// contributions are derived exactly from the neighbour's sweep.
struct SweepResult {
  /// Dependency sums over ordered (source, target) pairs; halve for unordered.
  std::vector<double> dependency;
  std::vector<std::uint64_t> distance_sum;
  std::vector<std::uint64_t> reach;  // size of the node's component
  std::vector<double> harmonic_sum;  // sum of 1/d over reachable nodes
  std::vector<std::uint32_t> eccentricity;
};

SweepResult run_sweep(const SocialGraph& g, const SweepRequest& request);

}  // namespace socnet::detail
