#include "socnet/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "socnet/error.hpp"

namespace socnet {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string format_value(const RankedTable& table, double value, int decimals) {
  return table.normalized ? fixed(value, decimals) : fixed(value, 0);
}

std::string join(const std::set<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::string title_case(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 32);
  return out;
}

constexpr std::array<Sentiment, kSentimentCount> kSentimentOrder = {
    Sentiment::positive, Sentiment::negative, Sentiment::neutral, Sentiment::unknown};

void write_ranked_markdown(const RankedTable& table, std::ostream& out) {
  out << "| Rank | Node | Value |\n|---:|---|---:|\n";
  for (const auto& row : table.rows) {
    out << "| " << row.rank << " | " << row.handle << " | " << format_value(table, row.value, 3)
        << " |\n";
  }
  if (table.rows.empty()) out << "| - | (none) | - |\n";
  out << "\n";
}

void write_rankings_markdown(const AnalysisReport& report, const std::vector<RankedTable>& tables,
                             std::ostream& out) {
  for (const auto& table : tables) {
    out << "### " << title_case(to_string(table.metric)) << "\n\n";
    write_ranked_markdown(table, out);
  }
  out << "Betweenness is the share of shortest paths between unordered pairs of other "
         "nodes that pass through the node, divided by (n-1)(n-2)/2 with n = "
      << report.node_count << ".\n";
  if (report.closeness == ClosenessVariant::component) {
    out << "Closeness is (c-1) divided by the sum of distances to the other c-1 members of "
           "the node's component (0 for isolated nodes).\n\n";
  } else {
    out << "Closeness is the harmonic variant: the sum of 1/d over reachable nodes divided by "
           "(n-1).\n\n";
  }
}

void write_consensus_markdown(const std::vector<std::string>& consensus, std::size_t k,
                              std::ostream& out) {
  if (consensus.empty()) {
    out << "No actor is in the top " << k << " of every centrality.\n\n";
    return;
  }
  for (std::size_t i = 0; i < consensus.size(); ++i) {
    out << i + 1 << ". " << consensus[i] << "\n";
  }
  out << "\n";
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }
  std::ostream& stream() { return out_; }
  void close() {
    out_.flush();
    if (!out_) throw IoError("failed writing " + path_.string());
    out_.close();
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_ranked_csv(const RankedTable& table, std::ostream& out) {
  out << "rank,node,value\n";
  for (const auto& row : table.rows) {
    out << row.rank << ',' << row.handle << ',' << format_value(table, row.value, 6) << '\n';
  }
}

}  // namespace

RankedTable rank_actors(const CentralityMap& map, std::size_t top_k,
                        const std::set<std::string>& excluded) {
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");
  std::vector<std::size_t> order;
  order.reserve(map.values.size());
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    if (!excluded.contains(map.handles[i])) order.push_back(i);
  }
  auto before = [&](std::size_t x, std::size_t y) {
    if (map.values[x] != map.values[y]) return map.values[x] > map.values[y];
    return map.handles[x] < map.handles[y];
  };
  const std::size_t keep = std::min(top_k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    before);
  RankedTable table;
  table.metric = map.metric;
  table.normalized = map.normalized;
  table.excluded = excluded;
  table.rows.reserve(keep);
  for (std::size_t r = 0; r < keep; ++r) {
    table.rows.push_back({r + 1, map.handles[order[r]], map.values[order[r]]});
  }
  return table;
}

std::string SentimentSummary::percentage_text(Sentiment s) const {
  const auto h = hundredths[static_cast<std::size_t>(s)];
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu.%02llu", static_cast<unsigned long long>(h / 100),
                static_cast<unsigned long long>(h % 100));
  return buf;
}

SentimentSummary sentiment_summary(std::span<const ConversationRecord> records) {
  SentimentSummary s;
  for (const auto& r : records) ++s.counts[static_cast<std::size_t>(r.sentiment)];
  s.total = records.size();
  if (s.total == 0) return s;
  const std::uint64_t total = s.total;
  for (std::size_t i = 0; i < kSentimentCount; ++i) {
    // round-half-up(10000 * count / total) in exact integer arithmetic
    s.hundredths[i] = (20000 * static_cast<std::uint64_t>(s.counts[i]) + total) / (2 * total);
  }
  return s;
}

std::vector<std::string> consensus_influencers(std::span<const RankedTable> tables, std::size_t k) {
  if (tables.size() < 2) throw std::invalid_argument("consensus needs at least two tables");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> seen;  // tables, rank sum
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      if (row.rank > k) continue;
      auto& entry = seen[row.handle];
      ++entry.first;
      entry.second += row.rank;
    }
  }
  std::vector<std::pair<std::size_t, std::string>> hits;
  for (const auto& [handle, entry] : seen) {
    if (entry.first == tables.size()) hits.emplace_back(entry.second, handle);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (auto& [sum, handle] : hits) out.push_back(std::move(handle));
  return out;
}

AnalysisReport analyze(const SocialGraph& g, std::span<const ConversationRecord> records,
                       const AnalysisOptions& options) {
  AnalysisReport report;
  report.top_k = options.top_k;
  report.closeness = options.centrality.closeness;
  report.node_count = g.node_count();
  report.edge_count = g.edge_count();

  const CentralitySet cs = all_centralities(g, options.centrality);
  for (const CentralityMap* map : {&cs.degree, &cs.betweenness, &cs.closeness}) {
    report.rankings.push_back(rank_actors(*map, options.top_k));
    if (!options.excluded.empty()) {
      report.crowd_rankings.push_back(rank_actors(*map, options.top_k, options.excluded));
    }
  }
  report.consensus = consensus_influencers(report.rankings, options.top_k);
  if (!report.crowd_rankings.empty()) {
    report.crowd_consensus = consensus_influencers(report.crowd_rankings, options.top_k);
  }

  report.global = global_metrics(g);
  const CutStructure cuts = cut_structure(g);
  report.articulation_count = cuts.articulation_points.size();
  report.bridge_count = cuts.bridges.size();
  CentralityMap cut_degree;
  cut_degree.metric = Metric::degree;
  for (NodeId v : cuts.articulation_points) {
    cut_degree.handles.push_back(g.handle(v));
    cut_degree.values.push_back(static_cast<double>(g.degree(v)));
  }
  report.cut_vertices = rank_actors(cut_degree, options.top_k);
  if (!cut_degree.values.empty()) {
    report.all_cut_vertices = rank_actors(cut_degree, cut_degree.values.size()).rows;
  }

  report.sentiment = sentiment_summary(records);
  for (const auto& removal : options.what_if) report.what_if.push_back(what_if_removal(g, removal));
  return report;
}

void render_markdown(const AnalysisReport& report, std::ostream& out) {
  const auto& gm = report.global;
  out << "# Conversation network report\n\n";
  out << "## Network\n\n| Property | Value |\n|---|---:|\n";
  out << "| Nodes | " << report.node_count << " |\n";
  out << "| Edges | " << report.edge_count << " |\n";
  out << "| Density | " << fixed(gm.density, 6) << " |\n";
  out << "| Diameter (giant component) | " << gm.diameter << " |\n";
  out << "| Average clustering | " << fixed(gm.avg_clustering, 4) << " |\n";
  out << "| Components | " << gm.component_count << " |\n";
  out << "| Giant component size | " << gm.giant_size << " |\n";
  out << "| Articulation points | " << report.articulation_count << " |\n";
  out << "| Bridges | " << report.bridge_count << " |\n\n";

  out << "## Centrality rankings (top " << report.top_k << ")\n\n";
  write_rankings_markdown(report, report.rankings, out);
  out << "## Consensus influencers\n\nActors in the top " << report.top_k
      << " of all three centralities, by rank sum:\n\n";
  write_consensus_markdown(report.consensus, report.top_k, out);

  if (!report.crowd_rankings.empty()) {
    out << "## Rankings without official accounts\n\nExcluded: "
        << join(report.crowd_rankings.front().excluded, ", ") << "\n\n";
    write_rankings_markdown(report, report.crowd_rankings, out);
    out << "### Consensus without official accounts\n\n";
    write_consensus_markdown(report.crowd_consensus, report.top_k, out);
  }

  out << "## Structural holes\n\nArticulation points with the highest degree; removing any "
         "one of them splits its component.\n\n";
  write_ranked_markdown(report.cut_vertices, out);

  const auto& s = report.sentiment;
  out << "## Sentiment\n\n| Label | Count | Percentage |\n|---|---:|---:|\n";
  for (Sentiment label : kSentimentOrder) {
    out << "| " << to_string(label) << " | " << s.count(label) << " | "
        << s.percentage_text(label) << " |\n";
  }
  out << "| total | " << s.total << " | |\n\n";

  if (!report.what_if.empty()) {
    out << "## What-if removal\n\n| Removed | Components | Giant component | Newly disconnected |\n"
           "|---|---|---|---:|\n";
    for (const auto& w : report.what_if) {
      out << "| " << (w.removed.empty() ? "(none)" : join(w.removed, ", ")) << " | "
          << w.components_before << " → " << w.components_after << " | " << w.giant_before
          << " → " << w.giant_after << " | " << w.newly_disconnected << " |\n";
    }
    out << "\n";
  }
}

std::vector<std::string> render_report(const AnalysisReport& report, ReportFormat format,
                                       const std::filesystem::path& directory) {
  std::vector<std::string> written;
  auto open = [&](const std::string& name) {
    written.push_back(name);
    return CsvFile(directory / name);
  };

  if (format == ReportFormat::markdown) {
    auto file = open("report.md");
    render_markdown(report, file.stream());
    file.close();
    return written;
  }

  auto write_tables = [&](const std::vector<RankedTable>& tables, std::string_view suffix) {
    for (const auto& table : tables) {
      auto file = open("ranking_" + std::string(to_string(table.metric)) + std::string(suffix) +
                       ".csv");
      write_ranked_csv(table, file.stream());
      file.close();
    }
  };
  write_tables(report.rankings, "");
  write_tables(report.crowd_rankings, "_excluded");

  {
    auto file = open("consensus.csv");
    file.stream() << "rank,node\n";
    for (std::size_t i = 0; i < report.consensus.size(); ++i) {
      file.stream() << i + 1 << ',' << report.consensus[i] << '\n';
    }
    file.close();
  }
  {
    const auto& gm = report.global;
    auto file = open("global_metrics.csv");
    auto& out = file.stream();
    out << "metric,value\n";
    out << "nodes," << report.node_count << '\n';
    out << "edges," << report.edge_count << '\n';
    out << "density," << fixed(gm.density, 9) << '\n';
    out << "diameter," << gm.diameter << '\n';
    out << "avg_clustering," << fixed(gm.avg_clustering, 9) << '\n';
    out << "component_count," << gm.component_count << '\n';
    out << "giant_size," << gm.giant_size << '\n';
    out << "articulation_points," << report.articulation_count << '\n';
    out << "bridges," << report.bridge_count << '\n';
    file.close();
  }
  {
    auto file = open("articulation_points.csv");
    file.stream() << "node,degree\n";
    for (const auto& row : report.all_cut_vertices) {
      file.stream() << row.handle << ',' << fixed(row.value, 0) << '\n';
    }
    file.close();
  }
  {
    const auto& s = report.sentiment;
    auto file = open("sentiment.csv");
    file.stream() << "label,count,percentage\n";
    for (Sentiment label : kSentimentOrder) {
      file.stream() << to_string(label) << ',' << s.count(label) << ',' << s.percentage_text(label)
                    << '\n';
    }
    file.close();
  }
  if (!report.what_if.empty()) {
    auto file = open("whatif.csv");
    file.stream()
        << "removed,components_before,components_after,giant_before,giant_after,newly_disconnected\n";
    for (const auto& w : report.what_if) {
      file.stream() << join(w.removed, ";") << ',' << w.components_before << ','
                    << w.components_after << ',' << w.giant_before << ',' << w.giant_after << ','
                    << w.newly_disconnected << '\n';
    }
    file.close();
  }
  return written;
}

}  // namespace socnet
