#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "socnet/error.hpp"
#include "socnet/report.hpp"

using namespace socnet;
namespace t = socnet::testing;
namespace fs = std::filesystem;

namespace {

using E = InteractionEdge;

CentralityMap make_map(Metric metric, std::vector<std::pair<std::string, double>> values) {
  CentralityMap m;
  m.metric = metric;
  for (auto& [h, v] : values) {
    m.handles.push_back(h);
    m.values.push_back(v);
  }
  return m;
}

// The degree column of the published ranking.
CentralityMap published_degree() {
  return make_map(Metric::degree, {{"xlcare", 437}, {"xl123", 59}, {"xlandme", 16},
                                   {"pejuangkuis", 13}, {"viccent22", 6}, {"raflatahugs", 5},
                                   {"tanteyulia", 4}, {"adhantrio", 4}, {"widideon", 3},
                                   {"zulfincitra", 3}});
}

std::vector<std::string> handles_of(const RankedTable& t) {
  std::vector<std::string> out;
  for (const auto& r : t.rows) out.push_back(r.handle);
  return out;
}

ConversationRecord labelled(Sentiment s) {
  ConversationRecord r;
  r.id = "x";
  r.author = "a";
  r.sentiment = s;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("socnet-report-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("ranking") {

TEST_CASE("ties break by handle") {
  const auto t = rank_actors(make_map(Metric::degree, {{"a", 3}, {"b", 1}, {"c", 3}}), 2);
  CHECK(t.rows == std::vector<RankedRow>{{1, "a", 3}, {2, "c", 3}});
}

TEST_CASE("empty map gives an empty table") {
  CHECK(rank_actors(CentralityMap{}, 10).rows.empty());
}

TEST_CASE("top_k must be positive") {
  CHECK_THROWS_AS(rank_actors(CentralityMap{}, 0), std::invalid_argument);
}

TEST_CASE("excluding the official accounts promotes the crowd") {
  const auto t = rank_actors(published_degree(), 10, {"xlcare", "xl123", "xlandme"});
  REQUIRE_FALSE(t.rows.empty());
  CHECK(t.rows[0] == RankedRow{1, "pejuangkuis", 13});
  CHECK(t.rows.size() == 7);
  CHECK(t.excluded.size() == 3);
  // equal degrees keep lexicographic order
  CHECK(t.rows[3].handle == "adhantrio");
  CHECK(t.rows[4].handle == "tanteyulia");
}

TEST_CASE("exclusion only promotes") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> value(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, double>> vals;
    for (int i = 0; i < 12; ++i) vals.emplace_back("h" + std::to_string(i), value(rng));
    const auto map = make_map(Metric::degree, vals);
    std::set<std::string> excluded;
    for (int i = 0; i < 12; ++i) {
      if (rng() % 4 == 0) excluded.insert("h" + std::to_string(i));
    }
    const std::size_t k = 1 + rng() % 8;
    const auto with = rank_actors(map, k, excluded);
    const auto wide = handles_of(rank_actors(map, k + excluded.size()));
    for (std::size_t i = 0; i < with.rows.size(); ++i) {
      CHECK(with.rows[i].rank == i + 1);
      CHECK_FALSE(excluded.contains(with.rows[i].handle));
      CHECK(std::find(wide.begin(), wide.end(), with.rows[i].handle) != wide.end());
      if (i > 0) CHECK(with.rows[i - 1].value >= with.rows[i].value);
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("sentiment") {

TEST_CASE("published composition over 1413 records") {
  std::vector<ConversationRecord> rs;
  for (int i = 0; i < 745; ++i) rs.push_back(labelled(Sentiment::negative));
  for (int i = 0; i < 102; ++i) rs.push_back(labelled(Sentiment::positive));
  for (int i = 0; i < 566; ++i) rs.push_back(labelled(Sentiment::unknown));
  const auto s = sentiment_summary(rs);
  CHECK(s.total == 1413);
  CHECK(s.percentage_text(Sentiment::negative) == "52.72");
  CHECK(s.percentage_text(Sentiment::positive) == "7.22");
  CHECK(s.percentage(Sentiment::negative) == doctest::Approx(52.72));
}

TEST_CASE("even split and empty input") {
  const std::vector<ConversationRecord> rs = {labelled(Sentiment::positive), labelled(Sentiment::positive),
                                              labelled(Sentiment::negative), labelled(Sentiment::negative)};
  const auto s = sentiment_summary(rs);
  CHECK(s.percentage_text(Sentiment::positive) == "50.00");
  CHECK(s.percentage_text(Sentiment::negative) == "50.00");

  const auto none = sentiment_summary({});
  CHECK(none.total == 0);
  for (std::size_t l = 0; l < kSentimentCount; ++l) {
    CHECK(none.hundredths[l] == 0);
    CHECK(none.percentage_text(static_cast<Sentiment>(l)) == "0.00");
  }
}

TEST_CASE("half-up rounding") {
  // 1/8 = 12.5% exactly, 1/6 = 16.666..%
  std::vector<ConversationRecord> rs(8, labelled(Sentiment::neutral));
  rs[0].sentiment = Sentiment::positive;
  CHECK(sentiment_summary(rs).percentage_text(Sentiment::positive) == "12.50");
  std::vector<ConversationRecord> six(6, labelled(Sentiment::neutral));
  six[0].sentiment = Sentiment::negative;
  CHECK(sentiment_summary(six).percentage_text(Sentiment::negative) == "16.67");
  std::vector<ConversationRecord> many(2000, labelled(Sentiment::neutral));
  many[0].sentiment = Sentiment::positive;  // 0.05% exactly
  CHECK(sentiment_summary(many).percentage_text(Sentiment::positive) == "0.05");
  std::vector<ConversationRecord> half(40000, labelled(Sentiment::neutral));
  half[0].sentiment = Sentiment::positive;  // 0.0025% rounds to 0.00
  CHECK(sentiment_summary(half).percentage_text(Sentiment::positive) == "0.00");
  std::vector<ConversationRecord> up(400, labelled(Sentiment::neutral));
  up[0].sentiment = Sentiment::positive;  // 0.25% exactly
  CHECK(sentiment_summary(up).percentage_text(Sentiment::positive) == "0.25");
  std::vector<ConversationRecord> tie(16000, labelled(Sentiment::neutral));
  tie[0].sentiment = Sentiment::positive;  // 0.00625%
  CHECK(sentiment_summary(tie).percentage_text(Sentiment::positive) == "0.01");
}

TEST_CASE("counts sum to total and percentages to 100 within rounding slack") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    std::vector<ConversationRecord> rs;
    for (std::size_t i = 0; i < n; ++i) rs.push_back(labelled(static_cast<Sentiment>(rng() % kSentimentCount)));
    const auto s = sentiment_summary(rs);
    std::size_t count = 0;
    double pct = 0;
    for (std::size_t l = 0; l < kSentimentCount; ++l) {
      count += s.counts[l];
      pct += s.percentage(static_cast<Sentiment>(l));
    }
    CHECK(count == s.total);
    CHECK(std::abs(pct - 100.0) <= 0.05 + 1e-9);
  }
}

}  // TEST_SUITE

TEST_SUITE("consensus") {

TEST_CASE("published rankings agree on the top account") {
  const auto degree = rank_actors(published_degree(), 10);
  const auto between = rank_actors(
      make_map(Metric::betweenness, {{"xlcare", 0.130}, {"xl123", 0.020}, {"xlandme", 0.006},
                                     {"pejuangkuis", 0.003}, {"afinatsabbita", 0.003}}),
      10);
  const auto close = rank_actors(
      make_map(Metric::closeness, {{"xlcare", 0.768}, {"xlsomesumatera", 0.750}, {"parkiyeeon", 0.750}}),
      10);
  const std::vector<RankedTable> tables = {degree, between, close};
  CHECK(consensus_influencers(tables, 1) == std::vector<std::string>{"xlcare"});
  CHECK(consensus_influencers(std::vector<RankedTable>{degree, between}, 4) ==
        std::vector<std::string>{"xlcare", "xl123", "xlandme"});  // afinatsabbita wins the tie at rank 4
}

TEST_CASE("disjoint and identical tables") {
  const auto a = rank_actors(make_map(Metric::degree, {{"a", 1}}), 1);
  const auto b = rank_actors(make_map(Metric::degree, {{"b", 1}}), 1);
  CHECK(consensus_influencers(std::vector<RankedTable>{a, b}, 1).empty());
  CHECK(consensus_influencers(std::vector<RankedTable>{a, a}, 1) == std::vector<std::string>{"a"});
  CHECK_THROWS_AS(consensus_influencers(std::vector<RankedTable>{a}, 1), std::invalid_argument);
  CHECK_THROWS_AS(consensus_influencers(std::vector<RankedTable>{a, a}, 0), std::invalid_argument);
}

TEST_CASE("k equal to the table length gives the intersection") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RankedTable> tables;
    const std::size_t len = 1 + rng() % 6;
    const int count = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      std::vector<std::pair<std::string, double>> vals;
      for (int h = 0; h < 8; ++h) vals.emplace_back("h" + std::to_string(h), static_cast<double>(rng() % 5));
      tables.push_back(rank_actors(make_map(Metric::degree, vals), len));
    }
    std::set<std::string> expected;
    for (const auto& h : handles_of(tables[0])) expected.insert(h);
    for (std::size_t i = 1; i < tables.size(); ++i) {
      std::set<std::string> keep;
      for (const auto& h : handles_of(tables[i])) {
        if (expected.contains(h)) keep.insert(h);
      }
      expected = keep;
    }
    const auto got = consensus_influencers(tables, len);
    CHECK(std::set<std::string>(got.begin(), got.end()) == expected);
    CHECK(got.size() == expected.size());
  }
}

}  // TEST_SUITE

TEST_SUITE("export") {

TEST_CASE("edge-csv of a single edge") {
  std::ostringstream out;
  export_graph(build_graph(std::vector<E>{{"a", "b", 2}}), GraphFormat::edge_csv, out);
  CHECK(out.str() == "source,target,weight\na,b,2\n");
}

TEST_CASE("dot of the empty graph") {
  std::ostringstream out;
  export_graph(SocialGraph{}, GraphFormat::dot, out);
  CHECK(out.str() == "graph {\n}\n");
}

TEST_CASE("dot has one statement per edge") {
  std::ostringstream out;
  const std::vector<std::string> iso = {"solo"};
  export_graph(build_graph(std::vector<E>{{"a", "b", 1}, {"b", "c", 3}}, iso), GraphFormat::dot, out);
  CHECK(out.str() == "graph {\n  \"solo\";\n  \"a\" -- \"b\" [weight=1];\n  \"b\" -- \"c\" [weight=3];\n}\n");
}

TEST_CASE("gexf round trip of a triangle") {
  const auto tri = build_graph(std::vector<E>{{"a", "b", 1}, {"b", "c", 2}, {"a", "c", 3}});
  std::stringstream doc;
  export_graph(tri, GraphFormat::gexf, doc);
  const auto text = doc.str();
  std::size_t nodes = 0, edges = 0;
  for (std::size_t p = 0; (p = text.find("<node ", p)) != std::string::npos; ++p) ++nodes;
  for (std::size_t p = 0; (p = text.find("<edge ", p)) != std::string::npos; ++p) ++edges;
  CHECK(nodes == 3);
  CHECK(edges == 3);
  CHECK(read_gexf(doc) == tri);
}

TEST_CASE("gexf keeps isolated nodes and escapes markup") {
  const std::vector<std::string> iso = {"<b&w>"};
  const auto g = build_graph(std::vector<E>{{"a", "b", 1}}, iso);
  std::stringstream doc;
  export_graph(g, GraphFormat::gexf, doc);
  CHECK(doc.str().find("&lt;b&amp;w&gt;") != std::string::npos);
  CHECK(read_gexf(doc) == g);
}

TEST_CASE("malformed imports are rejected") {
  std::istringstream bad_header("from,to,weight\na,b,1\n");
  CHECK_THROWS_AS(read_edge_csv(bad_header), Error);
  std::istringstream bad_weight("source,target,weight\na,b,zero\n");
  CHECK_THROWS_AS(read_edge_csv(bad_weight), Error);
  std::istringstream loop("source,target,weight\na,a,1\n");
  CHECK_THROWS_AS(read_edge_csv(loop), Error);
  std::istringstream xml("<gexf><graph>");
  CHECK_THROWS_AS(read_gexf(xml), Error);
}

TEST_CASE("edge-csv round trip on random graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sg = t::random_graph(2 + static_cast<int>(rng() % 15), 0.3, rng);
    std::vector<E> edges;
    for (auto e : t::to_social(sg).edges()) {
      e.weight = 1 + rng() % 7;
      edges.push_back(e);
    }
    const auto g = build_graph(edges);
    std::stringstream csv;
    export_graph(g, GraphFormat::edge_csv, csv);
    const auto back = build_graph(read_edge_csv(csv));
    CHECK(equivalent(back, g));
    CHECK(back.edges() == g.edges());
  }
}

TEST_CASE("format names") {
  CHECK(parse_graph_format("edge-csv") == GraphFormat::edge_csv);
  CHECK(parse_graph_format("gexf") == GraphFormat::gexf);
  CHECK_FALSE(parse_graph_format("svg").has_value());
  CHECK(default_file_name(GraphFormat::dot) == "graph.dot");
}

}  // TEST_SUITE

TEST_SUITE("render") {

AnalysisReport sample_report() {
  const auto g = build_graph(std::vector<E>{{"hub", "a", 1}, {"hub", "b", 2}, {"hub", "c", 1},
                                            {"c", "d", 1}, {"official", "hub", 1}});
  std::vector<ConversationRecord> rs = {labelled(Sentiment::negative), labelled(Sentiment::positive)};
  AnalysisOptions opts;
  opts.top_k = 3;
  opts.excluded = {"official"};
  opts.what_if = {{"hub"}, {"c", "ghost"}};
  return analyze(g, rs, opts);
}

TEST_CASE("analysis assembles every section") {
  const auto r = sample_report();
  CHECK(r.node_count == 6);
  CHECK(r.edge_count == 5);
  REQUIRE(r.rankings.size() == 3);
  REQUIRE(r.crowd_rankings.size() == 3);
  CHECK(r.rankings[0].rows[0].handle == "hub");
  CHECK(r.rankings[0].rows.size() == 3);
  for (const auto& t : r.crowd_rankings) {
    for (const auto& row : t.rows) CHECK(row.handle != "official");
  }
  CHECK(r.consensus.front() == "hub");
  CHECK(r.articulation_count == 2);
  REQUIRE(r.what_if.size() == 2);
  CHECK(r.what_if[0].components_after == 4);
  CHECK(r.what_if[1].missing == std::set<std::string>{"ghost"});
  CHECK(r.sentiment.total == 2);
  // consensus entries sit inside every top-k slice
  for (const auto& h : r.consensus) {
    for (const auto& t : r.rankings) {
      const auto hs = handles_of(t);
      CHECK(std::find(hs.begin(), hs.end(), h) != hs.end());
    }
  }
}

TEST_CASE("markdown is deterministic and uses the ranking layout") {
  const auto r = sample_report();
  std::ostringstream a, b;
  render_markdown(r, a);
  render_markdown(r, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("| Rank | Node | Value |") != std::string::npos);
  CHECK(a.str().find("→") != std::string::npos);
}

TEST_CASE("csv bundle files and headers") {
  const auto r = sample_report();
  TempDir dir;
  const auto files = render_report(r, ReportFormat::csv_bundle, dir.path);
  CHECK(std::find(files.begin(), files.end(), "sentiment.csv") != files.end());
  CHECK(std::find(files.begin(), files.end(), "whatif.csv") != files.end());
  const auto sentiment = slurp(dir.path / "sentiment.csv");
  CHECK(sentiment.rfind("label,count,percentage\n", 0) == 0);
  CHECK(sentiment.find("negative,1,50.00\n") != std::string::npos);
  CHECK(slurp(dir.path / "ranking_degree.csv").rfind("rank,node,value\n1,hub,", 0) == 0);
  for (const auto& f : files) CHECK(fs::exists(dir.path / f));

  const auto again = render_report(r, ReportFormat::csv_bundle, dir.path);
  CHECK(again == files);
}

TEST_CASE("unwritable destination is an I/O error") {
  CHECK_THROWS_AS(render_report(sample_report(), ReportFormat::markdown, "/nonexistent/dir/for/socnet"),
                  IoError);
}

}  // TEST_SUITE
