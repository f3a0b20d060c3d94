#include <algorithm>

#include "socnet/metrics.hpp"
#include "sweep.hpp"

namespace socnet {

namespace {

CentralityMap empty_map(const SocialGraph& g, Metric metric, bool normalized) {
  CentralityMap map;
  map.metric = metric;
  map.handles.assign(g.handles().begin(), g.handles().end());
  map.values.assign(g.node_count(), 0.0);
  map.normalized = normalized;
  return map;
}

CentralityMap betweenness_from(const SocialGraph& g, const detail::SweepResult& sweep) {
  CentralityMap map = empty_map(g, Metric::betweenness, true);
  const std::size_t n = g.node_count();
  if (n < 3) return map;
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (std::size_t v = 0; v < n; ++v) map.values[v] = (sweep.dependency[v] / 2.0) / pairs;
  return map;
}

CentralityMap closeness_from(const SocialGraph& g, const detail::SweepResult& sweep,
                             ClosenessVariant variant) {
  CentralityMap map = empty_map(g, Metric::closeness, true);
  const std::size_t n = g.node_count();
  for (std::size_t v = 0; v < n; ++v) {
    if (variant == ClosenessVariant::component) {
      const std::uint64_t c = sweep.reach[v];
      if (c >= 2) {
        map.values[v] =
            static_cast<double>(c - 1) / static_cast<double>(sweep.distance_sum[v]);
      }
    } else if (n >= 2) {
      map.values[v] = sweep.harmonic_sum[v] / static_cast<double>(n - 1);
    }
  }
  return map;
}

}  // namespace

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::degree: return "degree";
    case Metric::betweenness: return "betweenness";
    case Metric::closeness: return "closeness";
  }
  return "unknown";
}

std::string_view to_string(ClosenessVariant v) noexcept {
  return v == ClosenessVariant::harmonic ? "harmonic" : "component";
}

CentralityMap degree_centrality(const SocialGraph& g) {
  CentralityMap map = empty_map(g, Metric::degree, false);
  for (NodeId v = 0; v < g.node_count(); ++v) map.values[v] = static_cast<double>(g.degree(v));
  return map;
}

CentralityMap betweenness_centrality(const SocialGraph& g, unsigned jobs) {
  if (g.node_count() < 3) return empty_map(g, Metric::betweenness, true);
  const auto sweep = detail::run_sweep(g, {.betweenness = true, .distances = false, .jobs = jobs});
  return betweenness_from(g, sweep);
}

CentralityMap closeness_centrality(const SocialGraph& g, ClosenessVariant variant, unsigned jobs) {
  const auto sweep = detail::run_sweep(g, {.betweenness = false, .distances = true, .jobs = jobs});
  return closeness_from(g, sweep, variant);
}

CentralitySet all_centralities(const SocialGraph& g, const CentralityOptions& options) {
  const auto sweep = detail::run_sweep(
      g, {.betweenness = g.node_count() >= 3, .distances = true, .jobs = options.jobs});
  CentralitySet set;
  set.degree = degree_centrality(g);
  set.betweenness = g.node_count() >= 3 ? betweenness_from(g, sweep)
                                        : empty_map(g, Metric::betweenness, true);
  set.closeness = closeness_from(g, sweep, options.closeness);
  return set;
}

}  // namespace socnet
