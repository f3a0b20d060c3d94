#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace socnet::detail {

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

// The source range is cut into a fixed number of contiguous chunks that depends
// only on the graph. Each chunk sums its sources in order into its own buffer
// and the buffers are reduced in chunk order, so the floating-point result is
// the same for any number of workers.
constexpr std::size_t kMaxChunks = 64;

// A pendant leaf is a degree-1 node whose neighbour has degree >= 2. Leaves
// never enter a BFS: the core graph is what remains after deleting them, and
// every core node carries the list of leaves hanging off it.
//
// Core nodes are numbered in BFS order from the highest-degree node of each
// component, which keeps the nodes of one BFS frontier close in memory.
struct CoreGraph {
  std::vector<NodeId> original;  // core id -> graph id
  std::vector<std::uint32_t> offsets;
  std::vector<NodeId> targets;   // core ids
  std::vector<std::uint32_t> leaf_offsets;
  std::vector<NodeId> leaves;    // graph ids, grouped by core parent

  std::size_t size() const { return original.size(); }
  const NodeId* begin(NodeId v) const { return targets.data() + offsets[v]; }
  const NodeId* end(NodeId v) const { return targets.data() + offsets[v + 1]; }
  std::uint32_t leaf_count(NodeId v) const { return leaf_offsets[v + 1] - leaf_offsets[v]; }
};

CoreGraph build_core(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<char> pendant(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    pendant[v] = g.degree(v) == 1 && g.degree(g.neighbors(v)[0]) >= 2;
  }

  std::vector<NodeId> by_degree;
  for (NodeId v = 0; v < n; ++v) {
    if (!pendant[v]) by_degree.push_back(v);
  }
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });

  CoreGraph core;
  core.original.reserve(by_degree.size());
  std::vector<char> seen(n, 0);
  for (NodeId root : by_degree) {
    if (seen[root]) continue;
    seen[root] = 1;
    core.original.push_back(root);
    for (std::size_t head = core.original.size() - 1; head < core.original.size(); ++head) {
      for (NodeId w : g.neighbors(core.original[head])) {
        if (!seen[w] && !pendant[w]) {
          seen[w] = 1;
          core.original.push_back(w);
        }
      }
    }
  }

  const std::size_t m = core.size();
  std::vector<NodeId> to_core(n, kNone);
  for (NodeId i = 0; i < m; ++i) to_core[core.original[i]] = i;

  core.offsets.assign(m + 1, 0);
  core.leaf_offsets.assign(m + 1, 0);
  for (NodeId i = 0; i < m; ++i) {
    std::uint32_t inner = 0, hanging = 0;
    for (NodeId w : g.neighbors(core.original[i])) (pendant[w] ? hanging : inner) += 1;
    core.offsets[i + 1] = core.offsets[i] + inner;
    core.leaf_offsets[i + 1] = core.leaf_offsets[i] + hanging;
  }
  core.targets.resize(core.offsets[m]);
  core.leaves.resize(core.leaf_offsets[m]);
  for (NodeId i = 0; i < m; ++i) {
    NodeId* row = core.targets.data() + core.offsets[i];
    NodeId* hang = core.leaves.data() + core.leaf_offsets[i];
    for (NodeId w : g.neighbors(core.original[i])) {
      if (pendant[w]) {
        *hang++ = w;
      } else {
        *row++ = to_core[w];
      }
    }
    std::sort(core.targets.data() + core.offsets[i], row);
  }
  return core;
}

class Worker {
 public:
  Worker(const CoreGraph& g, const SweepRequest& req, SweepResult& out)
      : g_(g), req_(req), out_(out) {
    state_.assign(g.size(), State{});
    order_.reserve(g.size());
    if (req.betweenness) {
      succ_end_.reserve(g.size());
      succ_.reserve(g.targets.size());
    }
  }

  void run_source(NodeId s, std::vector<double>* acc) {
    if (req_.betweenness) {
      bfs_counting(s);
    } else {
      bfs_plain(s);
    }
    std::size_t reach = 0;
    for (NodeId v : order_) reach += 1 + g_.leaf_count(v);

    if (req_.distances) record_distances(s, reach);
    if (req_.betweenness) accumulate(s, reach, *acc);

    for (NodeId v : order_) state_[v] = State{};
  }

 private:
  struct State {
    // Shortest-path count from the source during the forward pass, replaced by
    // (1 + delta) / sigma once the node's dependency is final.
    double weight = 0.0;
    std::int32_t dist = -1;
  };

  void bfs_plain(NodeId s) {
    order_.clear();
    order_.push_back(s);
    state_[s].dist = 0;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const NodeId v = order_[head];
      const std::int32_t next = state_[v].dist + 1;
      for (const NodeId* w = g_.begin(v); w != g_.end(v); ++w) {
        if (state_[*w].dist < 0) {
          state_[*w].dist = next;
          order_.push_back(*w);
        }
      }
    }
  }

  // BFS that also counts shortest paths and records, per visited node in BFS
  // order, its successors in the shortest-path DAG.
  void bfs_counting(NodeId s) {
    order_.clear();
    succ_.clear();
    succ_end_.clear();
    order_.push_back(s);
    state_[s].dist = 0;
    state_[s].weight = 1.0;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const NodeId v = order_[head];
      const std::int32_t next = state_[v].dist + 1;
      const double sigma_v = state_[v].weight;
      for (const NodeId* w = g_.begin(v); w != g_.end(v); ++w) {
        State& sw = state_[*w];
        if (sw.dist < 0) {
          sw.dist = next;
          order_.push_back(*w);
        }
        if (sw.dist == next) {
          sw.weight += sigma_v;
          succ_.push_back(*w);
        }
      }
      succ_end_.push_back(static_cast<std::uint32_t>(succ_.size()));
    }
  }

  void record_distances(NodeId s, std::size_t reach) {
    levels_.clear();
    std::uint64_t sum = 0;
    for (NodeId v : order_) {
      const auto d = static_cast<std::size_t>(state_[v].dist);
      const std::uint32_t hanging = g_.leaf_count(v);
      if (d + 1 >= levels_.size()) levels_.resize(d + 2, 0);
      ++levels_[d];
      levels_[d + 1] += hanging;
      sum += d + std::uint64_t{hanging} * (d + 1);
    }
    while (levels_.back() == 0) levels_.pop_back();
    const auto ecc = static_cast<std::uint32_t>(levels_.size() - 1);
    double harmonic = 0.0;
    for (std::size_t k = 1; k < levels_.size(); ++k) {
      harmonic += static_cast<double>(levels_[k]) / static_cast<double>(k);
    }
    const NodeId id = g_.original[s];
    out_.distance_sum[id] = sum;
    out_.reach[id] = reach;
    out_.harmonic_sum[id] = harmonic;
    out_.eccentricity[id] = ecc;

    if (g_.leaf_count(s) == 0) return;
    // From a pendant leaf every node other than itself is one hop further away
    // than from its parent, and the parent sits at distance 1.
    double leaf_harmonic = 1.0;
    for (std::size_t k = 1; k < levels_.size(); ++k) {
      const std::uint64_t others = levels_[k] - (k == 1 ? 1 : 0);
      leaf_harmonic += static_cast<double>(others) / static_cast<double>(k + 1);
    }
    for (std::uint32_t i = g_.leaf_offsets[s]; i < g_.leaf_offsets[s + 1]; ++i) {
      const NodeId leaf = g_.leaves[i];
      out_.distance_sum[leaf] = sum + reach - 2;
      out_.reach[leaf] = reach;
      out_.harmonic_sum[leaf] = leaf_harmonic;
      out_.eccentricity[leaf] = ecc + 1;
    }
  }

  void accumulate(NodeId s, std::size_t reach, std::vector<double>& acc) {
    // A leaf target hangs off a single node and adds exactly 1 to its
    // dependency. Each leaf of s as a source sees the dependencies of s on
    // every other node, and depends on s itself for all reach - 2 targets.
    const std::uint32_t own_leaves = g_.leaf_count(s);
    const auto multiplicity = static_cast<double>(1 + own_leaves);
    for (std::size_t i = order_.size(); i-- > 1;) {
      const NodeId v = order_[i];
      double dep = 0.0;
      for (std::uint32_t k = succ_end_[i - 1]; k < succ_end_[i]; ++k) dep += state_[succ_[k]].weight;
      State& sv = state_[v];
      dep = dep * sv.weight + static_cast<double>(g_.leaf_count(v));
      sv.weight = (1.0 + dep) / sv.weight;
      acc[v] += multiplicity * dep;
    }
    if (own_leaves > 0 && reach >= 2) {
      acc[s] += static_cast<double>(own_leaves) * static_cast<double>(reach - 2);
    }
  }

  const CoreGraph& g_;
  const SweepRequest& req_;
  SweepResult& out_;
  std::vector<State> state_;
  std::vector<NodeId> order_;
  std::vector<NodeId> succ_;
  std::vector<std::uint32_t> succ_end_;  // succ_ range of order_[i] ends at succ_end_[i]
  std::vector<std::uint64_t> levels_;
};

}  // namespace

SweepResult run_sweep(const SocialGraph& g, const SweepRequest& request) {
  const std::size_t n = g.node_count();
  SweepResult out;
  if (request.distances) {
    out.distance_sum.assign(n, 0);
    out.reach.assign(n, 1);
    out.harmonic_sum.assign(n, 0.0);
    out.eccentricity.assign(n, 0);
  }
  if (request.betweenness) out.dependency.assign(n, 0.0);
  if (n == 0 || (!request.betweenness && !request.distances)) return out;

  const CoreGraph core = build_core(g);
  const std::size_t sources = core.size();
  const std::size_t chunks = std::min(sources, kMaxChunks);
  std::vector<std::vector<double>> chunk_acc(request.betweenness ? chunks : 0);

  std::atomic<std::size_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      Worker worker(core, request, out);
      for (std::size_t c = next_chunk++; c < chunks; c = next_chunk++) {
        const std::size_t begin = sources * c / chunks;
        const std::size_t end = sources * (c + 1) / chunks;
        std::vector<double>* acc = nullptr;
        if (request.betweenness) {
          chunk_acc[c].assign(sources, 0.0);
          acc = &chunk_acc[c];
        }
        for (std::size_t s = begin; s < end; ++s) worker.run_source(static_cast<NodeId>(s), acc);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk = chunks;
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(request.jobs, 1, std::max<std::size_t>(chunks, 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (request.betweenness) {
    for (const auto& acc : chunk_acc) {
      for (std::size_t v = 0; v < sources; ++v) out.dependency[core.original[v]] += acc[v];
    }
  }
  return out;
}

}  // namespace socnet::detail
