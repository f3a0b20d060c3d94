#pragma once

// Brute-force reference computations for small graphs. These deliberately
// share no code with the library: distances come from Floyd-Warshall on an
// adjacency matrix, shortest paths are enumerated one by one, and
// connectivity is recounted with union-find.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet::testing {

struct SmallGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, no duplicates
};

/// Handles "n0", "n1", ... so node ids match the SmallGraph indices.
SocialGraph to_social(const SmallGraph& g);

std::vector<std::vector<int>> all_pairs_distances(const SmallGraph& g);  // -1 = unreachable

/// Enumerates every shortest s-t path explicitly; normalized by (n-1)(n-2)/2.
std::vector<double> brute_betweenness(const SmallGraph& g);

/// (c-1)/sum of distances within the component; 0 when isolated.
std::vector<double> brute_closeness(const SmallGraph& g);

/// Harmonic closeness: sum of 1/d over reachable nodes, divided by (n-1).
std::vector<double> brute_harmonic(const SmallGraph& g);

std::size_t union_find_components(int n, const std::vector<std::pair<int, int>>& edges,
                                  int skip_node = -1, int skip_edge = -1);

std::set<int> brute_articulation_points(const SmallGraph& g);
std::set<std::pair<int, int>> brute_bridges(const SmallGraph& g);

/// Triangle-based local clustering by triple enumeration.
std::vector<double> brute_clustering(const SmallGraph& g);

bool is_connected(const SmallGraph& g);

SmallGraph random_graph(int n, double p, std::mt19937_64& rng);
SmallGraph random_connected_graph(int n, double p, std::mt19937_64& rng);
/// Graph number `mask` among all 2^(n(n-1)/2) labelled graphs on n nodes.
SmallGraph graph_from_mask(int n, std::uint64_t mask);

SmallGraph star(int n);   // node 0 is the centre
SmallGraph path(int n);
SmallGraph cycle(int n);
SmallGraph complete(int n);

}  // namespace socnet::testing
