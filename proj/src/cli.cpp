#include "socnet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "socnet/fetch.hpp"
#include "socnet/graph.hpp"
#include "socnet/report.hpp"

namespace socnet::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxReportedIssues = 20;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::set<std::string> handle_set(const std::string& text) {
  std::set<std::string> out;
  for (const auto& raw : split_list(text)) {
    auto h = normalize_handle(raw);
    if (!h) throw ConfigError("invalid handle '" + raw + "'");
    out.insert(std::move(*h));
  }
  return out;
}

std::set<std::string> load_exclusions(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read exclusion list " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t");
    const auto raw = line.substr(b, e - b + 1);
    auto h = normalize_handle(raw);
    if (!h) throw ConfigError("invalid handle '" + raw + "' in " + path.string());
    out.insert(std::move(*h));
  }
  return out;
}

std::set<std::string> all_exclusions(const RunConfig& config) {
  std::set<std::string> out = config.exclude;
  if (config.exclude_file) out.merge(load_exclusions(*config.exclude_file));
  return out;
}

struct Loaded {
  std::size_t parsed = 0;
  std::size_t issues = 0;
  std::vector<ConversationRecord> records;  // after filtering
};

void report_issues(const std::vector<ParseIssue>& issues, std::ostream& err) {
  for (std::size_t i = 0; i < issues.size() && i < kMaxReportedIssues; ++i) {
    err << "warning: record " << issues[i].line << ": " << to_string(issues[i].cause) << " ("
        << issues[i].detail << ")\n";
  }
  if (issues.size() > kMaxReportedIssues) {
    err << "warning: " << issues.size() - kMaxReportedIssues << " more defective records\n";
  }
}

void require_one_source(const RunConfig& config, bool allow_graph) {
  const int sources = int(config.input.has_value()) + int(config.source_url.has_value()) +
                      int(allow_graph && config.graph.has_value());
  if (sources != 1) {
    throw ConfigError(allow_graph ? "give exactly one of --input, --source or --graph"
                                  : "give exactly one of --input or --source");
  }
  if (config.top_k == 0) throw ConfigError("--top-k must be at least 1");
  if (config.jobs == 0) throw ConfigError("--jobs must be at least 1");
  if (config.from && config.to && !(*config.from < *config.to)) {
    throw ConfigError("--from must be earlier than --to");
  }
}

Loaded load_records(const RunConfig& config, std::ostream& err) {
  Loaded loaded;
  ParseResult parsed;
  if (config.input) {
    std::error_code ec;
    if (!fs::is_regular_file(*config.input, ec)) {
      throw InputError("input file not found: " + config.input->string());
    }
    std::ifstream in(*config.input, std::ios::binary);
    if (!in) throw InputError("cannot open input " + config.input->string());
    try {
      parsed = parse_records(in);
    } catch (const IoError& e) {
      throw InputError(e.what());
    }
  } else {
    SourceConfig source;
    source.base_url = *config.source_url;
    source.page_size = config.page_size;
    source.max_pages = config.max_pages;
    source.retry_budget = config.retries;
    try {
      auto fetched = fetch_paginated(source);
      parsed.records = std::move(fetched.records);
      parsed.issues = std::move(fetched.issues);
    } catch (const FetchError& e) {
      throw InputError(std::string("fetch failed: ") + e.what());
    }
  }
  report_issues(parsed.issues, err);
  loaded.parsed = parsed.records.size();
  loaded.issues = parsed.issues.size();
  const FilterSpec spec(config.terms, config.from, config.to);
  loaded.records = filter_records(parsed.records, spec);
  return loaded;
}

SocialGraph graph_from_records(std::span<const ConversationRecord> records) {
  const auto edges = extract_interactions(records);
  const auto actors = collect_actors(records);
  return build_graph(edges, actors);
}

SocialGraph load_graph_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open graph file " + path.string());
  const auto ext = path.extension().string();
  try {
    if (ext == ".gexf" || ext == ".xml") return read_gexf(in);
    if (ext == ".csv") {
      const auto edges = read_edge_csv(in);
      return build_graph(edges);
    }
  } catch (const Error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  throw ConfigError("--graph expects a .csv edge list or a .gexf file");
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string export_file(const SocialGraph& g, GraphFormat format, const fs::path& dir) {
  const std::string name(default_file_name(format));
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw IoError("cannot open " + (dir / name).string() + " for writing");
  export_graph(g, format, out);
  return name;
}

struct AnalyzeFormats {
  bool markdown = false;
  bool csv = false;
  std::vector<GraphFormat> graphs;
};

AnalyzeFormats parse_analyze_formats(const std::vector<std::string>& names) {
  AnalyzeFormats f;
  if (names.empty()) {
    f.markdown = f.csv = true;
    return f;
  }
  for (const auto& name : names) {
    if (name == "markdown") {
      f.markdown = true;
    } else if (name == "csv") {
      f.csv = true;
    } else if (auto g = parse_graph_format(name)) {
      if (std::find(f.graphs.begin(), f.graphs.end(), *g) == f.graphs.end()) f.graphs.push_back(*g);
    } else {
      throw ConfigError("unsupported format '" + name + "'");
    }
  }
  return f;
}

std::vector<GraphFormat> parse_export_formats(const std::vector<std::string>& names) {
  if (names.empty()) return {GraphFormat::edge_csv};
  std::vector<GraphFormat> out;
  for (const auto& name : names) {
    auto g = parse_graph_format(name);
    if (!g) throw ConfigError("unsupported export format '" + name + "'");
    if (std::find(out.begin(), out.end(), *g) == out.end()) out.push_back(*g);
  }
  return out;
}

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void print_fragmentation(const FragmentationReport& r, std::ostream& out) {
  out << "removed: ";
  if (r.removed.empty()) out << "(none)";
  bool first = true;
  for (const auto& h : r.removed) {
    out << (first ? "" : ", ") << h;
    first = false;
  }
  out << "\ncomponents: " << r.components_before << " → " << r.components_after
      << "\ngiant component: " << r.giant_before << " → " << r.giant_after
      << "\nnewly disconnected: " << r.newly_disconnected << "\n";
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_one_source(config, /*allow_graph=*/false);
    const AnalyzeFormats formats = parse_analyze_formats(config.formats);
    const auto excluded = all_exclusions(config);

    const auto t_start = Clock::now();
    const Loaded loaded = load_records(config, err);
    const double ingest_ms = millis_since(t_start);

    const auto t_graph = Clock::now();
    const SocialGraph g = graph_from_records(loaded.records);
    const double graph_ms = millis_since(t_graph);

    const auto t_metrics = Clock::now();
    AnalysisOptions options;
    options.top_k = config.top_k;
    options.excluded = excluded;
    options.what_if = config.what_if;
    options.centrality = {.jobs = config.jobs, .closeness = config.closeness};
    const AnalysisReport report = analyze(g, loaded.records, options);
    const double metrics_ms = millis_since(t_metrics);

    const auto t_write = Clock::now();
    ensure_directory(config.out_dir);
    std::vector<std::string> written;
    if (formats.markdown) {
      auto files = render_report(report, ReportFormat::markdown, config.out_dir);
      written.insert(written.end(), files.begin(), files.end());
    }
    if (formats.csv) {
      auto files = render_report(report, ReportFormat::csv_bundle, config.out_dir);
      written.insert(written.end(), files.begin(), files.end());
    }
    for (GraphFormat f : formats.graphs) written.push_back(export_file(g, f, config.out_dir));
    written.push_back("manifest.json");
    std::sort(written.begin(), written.end());

    using nlohmann::json;
    json manifest;
    manifest["tool"] = "socnet";
    if (config.input) {
      manifest["input"] = {{"kind", "file"}, {"location", config.input->string()}};
    } else {
      manifest["input"] = {{"kind", "source"}, {"location", *config.source_url}};
    }
    manifest["records"] = {{"parsed", loaded.parsed},
                           {"defective", loaded.issues},
                           {"after_filter", loaded.records.size()}};
    const auto parts = components(g);
    std::size_t isolated = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) isolated += g.degree(v) == 0 ? 1 : 0;
    manifest["graph"] = {{"nodes", g.node_count()},
                         {"edges", g.edge_count()},
                         {"components", parts.count()},
                         {"giant_size", parts.largest()},
                         {"isolated_nodes", isolated}};
    json what_if = json::array();
    for (const auto& s : config.what_if) what_if.push_back(s);
    manifest["config"] = {{"terms", config.terms},
                          {"from", config.from ? json(format_rfc3339(*config.from)) : json()},
                          {"to", config.to ? json(format_rfc3339(*config.to)) : json()},
                          {"top_k", config.top_k},
                          {"closeness", std::string(to_string(config.closeness))},
                          {"excluded", excluded},
                          {"what_if", what_if}};
    manifest["sentiment_total"] = report.sentiment.total;
    manifest["outputs"] = written;
    write_text_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");

    const double write_ms = millis_since(t_write);
    json timings = {{"jobs", config.jobs},
                    {"ingest_ms", ingest_ms},
                    {"graph_ms", graph_ms},
                    {"metrics_ms", metrics_ms},
                    {"write_ms", write_ms},
                    {"total_ms", millis_since(t_start)}};
    write_text_file(config.out_dir / "timings.json", timings.dump(2) + "\n");

    out << "analyzed " << loaded.records.size() << " records: " << g.node_count() << " nodes, "
        << g.edge_count() << " edges -> " << config.out_dir.string() << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_whatif(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_one_source(config, /*allow_graph=*/true);
    SocialGraph g;
    if (config.graph) {
      g = load_graph_file(*config.graph);
    } else {
      g = graph_from_records(load_records(config, err).records);
    }
    std::vector<std::set<std::string>> removals = config.what_if;
    if (removals.empty()) removals.emplace_back();
    for (std::size_t i = 0; i < removals.size(); ++i) {
      const auto report = what_if_removal(g, removals[i]);
      for (const auto& h : report.missing) {
        err << "warning: '" << h << "' is not in the graph; ignoring\n";
      }
      if (i > 0) out << "\n";
      print_fragmentation(report, out);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_one_source(config, /*allow_graph=*/false);
    const auto formats = parse_export_formats(config.formats);
    const SocialGraph g = graph_from_records(load_records(config, err).records);
    ensure_directory(config.out_dir);
    for (GraphFormat f : formats) {
      out << (config.out_dir / export_file(g, f, config.out_dir)).string() << "\n";
    }
    return static_cast<int>(kOk);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conversation social-network analytics", "socnet"};
  app.require_subcommand(1);

  RunConfig config;
  std::optional<std::string> input, source, graph_file, exclude_file;
  std::vector<std::string> terms, formats, removals, exclude_inline;
  std::optional<std::string> from, to;
  std::string closeness = "component";
  std::string out_dir = "out";
  std::size_t top_k = 10;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto add_source_flags = [&](CLI::App* cmd, bool with_graph) {
    cmd->add_option("--input", input, "Record file, one JSON object per line");
    cmd->add_option("--source", source, "Paginated HTTP source URL");
    if (with_graph) cmd->add_option("--graph", graph_file, "Edge-csv or GEXF graph export");
    cmd->add_option("--terms", terms, "Comma-separated keyword/hashtag terms");
    cmd->add_option("--from", from, "Window start (RFC 3339, inclusive)");
    cmd->add_option("--to", to, "Window end (RFC 3339, exclusive)");
    cmd->add_option("--page-size", config.page_size, "Records per page for --source");
    cmd->add_option("--max-pages", config.max_pages, "Page limit for --source");
    cmd->add_option("--retries", config.retries, "Retry budget per page for --source");
  };

  auto* analyze = app.add_subcommand("analyze", "Full pipeline: ingest, graph, metrics, report");
  add_source_flags(analyze, false);
  analyze->add_option("--exclude", exclude_file, "File of official accounts, one per line");
  analyze->add_option("--exclude-handles", exclude_inline, "Comma-separated accounts to exclude");
  analyze->add_option("--top-k", top_k, "Rows per ranking (default 10)");
  analyze->add_option("--closeness", closeness, "component or harmonic");
  analyze->add_option("--remove", removals, "What-if removal set h1,h2 (repeatable)");
  analyze->add_option("--out", out_dir, "Output directory");
  analyze->add_option("--format", formats, "gexf,dot,edge-csv,markdown,csv");
  analyze->add_option("--jobs", jobs, "Worker threads for the centrality sweeps");

  auto* whatif = app.add_subcommand("whatif", "Fragmentation after removing nodes");
  add_source_flags(whatif, true);
  whatif->add_option("--remove", removals, "Removal set h1,h2 (repeatable)");

  auto* exp = app.add_subcommand("export", "Write the graph as gexf, dot or edge-csv");
  add_source_flags(exp, false);
  exp->add_option("--out", out_dir, "Output directory");
  exp->add_option("--format", formats, "gexf,dot,edge-csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kConfigError;
  }

  const int status = guarded(err, [&] {
    if (input) config.input = *input;
    if (source) config.source_url = *source;
    if (graph_file) config.graph = *graph_file;
    if (exclude_file) config.exclude_file = *exclude_file;
    for (const auto& t : terms) {
      for (auto& term : split_list(t)) config.terms.insert(std::move(term));
    }
    for (const auto& f : formats) {
      for (auto& name : split_list(f)) config.formats.push_back(std::move(name));
    }
    for (const auto& r : removals) config.what_if.push_back(handle_set(r));
    for (const auto& e : exclude_inline) config.exclude.merge(handle_set(e));
    if (from) {
      config.from = parse_rfc3339(*from);
      if (!config.from) throw ConfigError("--from is not an RFC 3339 instant: " + *from);
    }
    if (to) {
      config.to = parse_rfc3339(*to);
      if (!config.to) throw ConfigError("--to is not an RFC 3339 instant: " + *to);
    }
    if (closeness == "component") {
      config.closeness = ClosenessVariant::component;
    } else if (closeness == "harmonic") {
      config.closeness = ClosenessVariant::harmonic;
    } else {
      throw ConfigError("--closeness must be 'component' or 'harmonic'");
    }
    config.top_k = top_k;
    config.jobs = jobs;
    config.out_dir = out_dir;
    return -1;
  });
  if (status != -1) return status;

  if (analyze->parsed()) return cmd_analyze(config, out, err);
  if (whatif->parsed()) return cmd_whatif(config, out, err);
  return cmd_export(config, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("socnet");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace socnet::cli
