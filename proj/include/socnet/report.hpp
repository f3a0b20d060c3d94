#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/ingest.hpp"
#include "socnet/metrics.hpp"

namespace socnet {

struct RankedRow {
  std::size_t rank = 0;  // 1-based
  std::string handle;
  double value = 0.0;

  bool operator==(const RankedRow&) const = default;
};

struct RankedTable {
  Metric metric = Metric::degree;
  bool normalized = false;
  std::vector<RankedRow> rows;
  std::set<std::string> excluded;
};

/// Sorts by value descending then handle ascending, drops `excluded`, keeps the
/// first `top_k` rows and numbers them from 1. Throws std::invalid_argument if
/// top_k == 0.
RankedTable rank_actors(const CentralityMap& map, std::size_t top_k,
                        const std::set<std::string>& excluded = {});

struct SentimentSummary {
  std::array<std::size_t, kSentimentCount> counts{};
  std::size_t total = 0;
  /// 100 * count / total in hundredths of a percent, rounded half up.
  std::array<std::uint64_t, kSentimentCount> hundredths{};

  std::size_t count(Sentiment s) const { return counts[static_cast<std::size_t>(s)]; }
  double percentage(Sentiment s) const {
    return static_cast<double>(hundredths[static_cast<std::size_t>(s)]) / 100.0;
  }
  /// Fixed two decimals, e.g. "52.72".
  std::string percentage_text(Sentiment s) const;
};

SentimentSummary sentiment_summary(std::span<const ConversationRecord> records);

/// Handles ranked within the first `k` rows of every table, ordered by the sum
/// of their ranks, ties by handle. Needs at least two tables and k >= 1.
std::vector<std::string> consensus_influencers(std::span<const RankedTable> tables, std::size_t k);

enum class GraphFormat : std::uint8_t { gexf, dot, edge_csv };

std::string_view to_string(GraphFormat f) noexcept;
std::optional<GraphFormat> parse_graph_format(std::string_view name);
/// Output file name used by the CLI ("graph.gexf", "graph.dot", "edges.csv").
std::string_view default_file_name(GraphFormat f) noexcept;

/// Throws IoError if the sink fails.
void export_graph(const SocialGraph& g, GraphFormat format, std::ostream& sink);

/// Reads the edge-csv export back. Handles are re-normalized. Throws Error on
/// a malformed header or row.
std::vector<InteractionEdge> read_edge_csv(std::istream& input);

/// Reads a GEXF document with node ids as handles, keeping isolated nodes and
/// document node order. Throws Error on malformed XML or structure.
SocialGraph read_gexf(std::istream& input);

struct AnalysisOptions {
  std::size_t top_k = 10;
  std::set<std::string> excluded;
  std::vector<std::set<std::string>> what_if;
  CentralityOptions centrality;
};

struct AnalysisReport {
  std::size_t top_k = 10;
  ClosenessVariant closeness = ClosenessVariant::component;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  GlobalMetrics global;
  std::size_t articulation_count = 0;
  std::size_t bridge_count = 0;

  /// Degree, betweenness, closeness over every actor.
  std::vector<RankedTable> rankings;
  /// Same metrics with the excluded accounts removed; empty when nothing is excluded.
  std::vector<RankedTable> crowd_rankings;
  std::vector<std::string> consensus;
  std::vector<std::string> crowd_consensus;

  /// Articulation points ranked by degree (rows truncated to top_k).
  RankedTable cut_vertices;
  /// All articulation points with their degree, degree descending.
  std::vector<RankedRow> all_cut_vertices;

  SentimentSummary sentiment;
  std::vector<FragmentationReport> what_if;
};

AnalysisReport analyze(const SocialGraph& g, std::span<const ConversationRecord> records,
                       const AnalysisOptions& options);

void render_markdown(const AnalysisReport& report, std::ostream& sink);

enum class ReportFormat : std::uint8_t { markdown, csv_bundle };

/// Writes the report into `directory` (which must exist) and returns the file
/// names written, in write order. Throws IoError when a file cannot be written.
std::vector<std::string> render_report(const AnalysisReport& report, ReportFormat format,
                                       const std::filesystem::path& directory);

}  // namespace socnet
