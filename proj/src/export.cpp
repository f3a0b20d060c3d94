#include <charconv>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "socnet/error.hpp"
#include "socnet/report.hpp"

namespace socnet {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_gexf(const SocialGraph& g, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
         "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n"
         "    <nodes>\n";
  for (const auto& h : g.handles()) {
    const auto id = xml_escape(h);
    out << "      <node id=\"" << id << "\" label=\"" << id << "\"/>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  std::size_t id = 0;
  for (const auto& e : g.edges()) {
    out << "      <edge id=\"" << id++ << "\" source=\"" << xml_escape(e.a) << "\" target=\""
        << xml_escape(e.b) << "\" weight=\"" << e.weight << "\"/>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

void write_dot(const SocialGraph& g, std::ostream& out) {
  out << "graph {\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) out << "  " << dot_quote(g.handle(v)) << ";\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << dot_quote(e.a) << " -- " << dot_quote(e.b) << " [weight=" << e.weight << "];\n";
  }
  out << "}\n";
}

void write_edge_csv(const SocialGraph& g, std::ostream& out) {
  out << "source,target,weight\n";
  for (const auto& e : g.edges()) out << e.a << ',' << e.b << ',' << e.weight << '\n';
}

std::optional<std::uint64_t> parse_weight(std::string_view s) {
  std::uint64_t w = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), w);
  if (ec != std::errc{} || ptr != s.data() + s.size() || w == 0) return std::nullopt;
  return w;
}

}  // namespace

std::string_view to_string(GraphFormat f) noexcept {
  switch (f) {
    case GraphFormat::gexf: return "gexf";
    case GraphFormat::dot: return "dot";
    case GraphFormat::edge_csv: return "edge-csv";
  }
  return "unknown";
}

std::optional<GraphFormat> parse_graph_format(std::string_view name) {
  if (name == "gexf") return GraphFormat::gexf;
  if (name == "dot") return GraphFormat::dot;
  if (name == "edge-csv") return GraphFormat::edge_csv;
  return std::nullopt;
}

std::string_view default_file_name(GraphFormat f) noexcept {
  switch (f) {
    case GraphFormat::gexf: return "graph.gexf";
    case GraphFormat::dot: return "graph.dot";
    case GraphFormat::edge_csv: return "edges.csv";
  }
  return "graph";
}

void export_graph(const SocialGraph& g, GraphFormat format, std::ostream& sink) {
  if (!sink) throw IoError("graph sink is not writable");
  switch (format) {
    case GraphFormat::gexf: write_gexf(g, sink); break;
    case GraphFormat::dot: write_dot(g, sink); break;
    case GraphFormat::edge_csv: write_edge_csv(g, sink); break;
  }
  sink.flush();
  if (!sink) throw IoError("failed writing graph export");
}

std::vector<InteractionEdge> read_edge_csv(std::istream& input) {
  if (!input) throw IoError("edge list stream is not readable");
  std::string line;
  std::size_t line_no = 0;
  auto strip_cr = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  if (!std::getline(input, line)) throw Error("edge list is empty (missing header)");
  ++line_no;
  strip_cr(line);
  if (line != "source,target,weight") {
    throw Error("edge list header must be 'source,target,weight', got '" + line + "'");
  }
  std::vector<InteractionEdge> edges;
  while (std::getline(input, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fail = [&](const std::string& why) {
      return Error("edge list line " + std::to_string(line_no) + ": " + why);
    };
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
      throw fail("expected 3 fields");
    }
    auto a = normalize_handle(std::string_view(line).substr(0, c1));
    auto b = normalize_handle(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const auto w = parse_weight(std::string_view(line).substr(c2 + 1));
    if (!a || !b) throw fail("invalid handle");
    if (!w) throw fail("weight must be a positive integer");
    if (*a == *b) throw fail("self-loop");
    if (*b < *a) std::swap(*a, *b);
    edges.push_back({std::move(*a), std::move(*b), *w});
  }
  if (input.bad()) throw IoError("read error in edge list");
  return edges;
}

SocialGraph read_gexf(std::istream& input) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    pt::read_xml(input, doc);
  } catch (const pt::xml_parser_error& e) {
    throw Error(std::string("malformed GEXF: ") + e.what());
  }
  const auto graph = doc.get_child_optional("gexf.graph");
  if (!graph) throw Error("GEXF document has no <gexf><graph> element");

  std::vector<std::string> handles;
  std::unordered_map<std::string, NodeId> index;
  if (const auto nodes = graph->get_child_optional("nodes")) {
    for (const auto& [tag, node] : *nodes) {
      if (tag != "node") continue;
      const auto id = node.get_optional<std::string>("<xmlattr>.id");
      if (!id || id->empty()) throw Error("GEXF node without id");
      if (!index.emplace(*id, static_cast<NodeId>(handles.size())).second) {
        throw Error("duplicate GEXF node id '" + *id + "'");
      }
      handles.push_back(*id);
    }
  }
  std::vector<SocialGraph::IndexedEdge> edges;
  if (const auto edge_list = graph->get_child_optional("edges")) {
    for (const auto& [tag, edge] : *edge_list) {
      if (tag != "edge") continue;
      const auto source = edge.get_optional<std::string>("<xmlattr>.source");
      const auto target = edge.get_optional<std::string>("<xmlattr>.target");
      if (!source || !target) throw Error("GEXF edge without source/target");
      const auto s = index.find(*source);
      const auto t = index.find(*target);
      if (s == index.end() || t == index.end()) {
        throw Error("GEXF edge references unknown node " + *source + "/" + *target);
      }
      std::uint64_t weight = 1;
      if (const auto w = edge.get_optional<std::string>("<xmlattr>.weight")) {
        const auto parsed = parse_weight(*w);
        if (!parsed) throw Error("GEXF edge weight must be a positive integer: " + *w);
        weight = *parsed;
      }
      edges.push_back({s->second, t->second, weight});
    }
  }
  return SocialGraph::from_indexed_edges(std::move(handles), edges);
}

}  // namespace socnet
