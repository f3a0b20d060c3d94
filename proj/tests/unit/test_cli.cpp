#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "socnet/cli.hpp"
#include "socnet/report.hpp"

namespace fs = std::filesystem;
using socnet::cli::run;

namespace {

const fs::path kData = SOCNET_TEST_DATA;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("socnet-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const char* name) { return (kData / name).string(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze on the eight-record fixture") {
  TempDir dir;
  const auto out = dir.path / "run";
  const auto r = invoke({"analyze", "--input", data("fixture8.jsonl"), "--out", out.string(), "--jobs", "2"});
  INFO(r.err);
  REQUIRE(r.status == 0);
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  // actors: alice bob carol dave erin frank gina helen
  // edges: alice-bob alice-carol carol-dave alice-dave bob-dave erin-frank alice-gina
  CHECK(manifest["graph"]["nodes"] == 8);
  CHECK(manifest["graph"]["edges"] == 7);
  CHECK(manifest["graph"]["isolated_nodes"] == 1);
  CHECK(manifest["graph"]["components"] == 3);
  CHECK(manifest["records"]["parsed"] == 8);
  CHECK(manifest["records"]["after_filter"] == 8);
  CHECK(fs::exists(out / "report.md"));
  CHECK(fs::exists(out / "sentiment.csv"));
  CHECK(fs::exists(out / "timings.json"));
  CHECK(slurp(out / "sentiment.csv") ==
        "label,count,percentage\npositive,1,12.50\nnegative,4,50.00\nneutral,1,12.50\nunknown,2,25.00\n");
}

TEST_CASE("filters narrow the input") {
  TempDir dir;
  const auto r = invoke({"analyze", "--input", data("fixture8.jsonl"), "--out", dir.path.string(),
                         "--terms", "xlcare,xl123", "--format", "csv"});
  REQUIRE(r.status == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir.path / "manifest.json"));
  CHECK(manifest["records"]["after_filter"] == 2);
  CHECK(manifest["graph"]["nodes"] == 5);  // dave alice bob erin frank
  CHECK_FALSE(fs::exists(dir.path / "report.md"));

  const auto window = invoke({"analyze", "--input", data("fixture8.jsonl"), "--out", dir.path.string(),
                              "--from", "2013-07-02T00:00:00+07:00", "--to", "2013-07-03T00:00:00+07:00"});
  REQUIRE(window.status == 0);
  CHECK(nlohmann::json::parse(slurp(dir.path / "manifest.json"))["records"]["after_filter"] == 3);
}

TEST_CASE("nonexistent input is an input error with no outputs") {
  TempDir dir;
  const auto out = dir.path / "never";
  const auto r = invoke({"analyze", "--input", (dir.path / "missing.jsonl").string(), "--out", out.string()});
  CHECK(r.status == socnet::cli::kInputError);
  CHECK_FALSE(fs::exists(out));
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("configuration errors") {
  TempDir dir;
  CHECK(invoke({"analyze"}).status == socnet::cli::kConfigError);
  CHECK(invoke({"analyze", "--input", data("fixture8.jsonl"), "--source", "http://127.0.0.1:1/x"}).status ==
        socnet::cli::kConfigError);
  CHECK(invoke({"analyze", "--input", data("fixture8.jsonl"), "--top-k", "0"}).status ==
        socnet::cli::kConfigError);
  CHECK(invoke({"analyze", "--input", data("fixture8.jsonl"), "--from", "yesterday"}).status ==
        socnet::cli::kConfigError);
  CHECK(invoke({"analyze", "--input", data("fixture8.jsonl"), "--closeness", "eigen"}).status ==
        socnet::cli::kConfigError);
  CHECK(invoke({"analyze", "--input", data("fixture8.jsonl"), "--out", dir.path.string(), "--format", "svg"})
            .status == socnet::cli::kConfigError);
  CHECK(invoke({"bogus"}).status == socnet::cli::kConfigError);
  CHECK(invoke({}).status == socnet::cli::kConfigError);
  CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("unwritable output directory is an I/O error") {
  TempDir dir;
  const auto blocker = dir.path / "file";
  std::ofstream(blocker) << "x";
  const auto r = invoke({"analyze", "--input", data("fixture8.jsonl"), "--out", (blocker / "sub").string()});
  CHECK(r.status == socnet::cli::kIoError);
}

TEST_CASE("whatif on the star fixture") {
  const auto hub = invoke({"whatif", "--input", data("star.jsonl"), "--remove", "center"});
  REQUIRE(hub.status == 0);
  CHECK(hub.out.find("components: 1 → 4") != std::string::npos);
  CHECK(hub.out.find("newly disconnected: 4") != std::string::npos);

  const auto none = invoke({"whatif", "--input", data("star.jsonl")});
  REQUIRE(none.status == 0);
  CHECK(none.out.find("components: 1 → 1") != std::string::npos);
  CHECK(none.out.find("giant component: 5 → 5") != std::string::npos);

  const auto all = invoke({"whatif", "--input", data("star.jsonl"), "--remove",
                           "center,leaf1,leaf2,leaf3,leaf4"});
  REQUIRE(all.status == 0);
  CHECK(all.out.find("components: 1 → 0") != std::string::npos);

  const auto ghost = invoke({"whatif", "--input", data("star.jsonl"), "--remove", "@Nobody"});
  CHECK(ghost.status == 0);
  CHECK(ghost.err.find("nobody") != std::string::npos);
}

TEST_CASE("whatif on an exported graph") {
  TempDir dir;
  REQUIRE(invoke({"export", "--input", data("star.jsonl"), "--out", dir.path.string(), "--format",
                  "edge-csv,gexf"}).status == 0);
  for (const char* file : {"edges.csv", "graph.gexf"}) {
    const auto r = invoke({"whatif", "--graph", (dir.path / file).string(), "--remove", "center"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("components: 1 → 4") != std::string::npos);
  }
}

TEST_CASE("export formats") {
  TempDir dir;
  const auto r = invoke({"export", "--input", data("one_edge.jsonl"), "--out", dir.path.string()});
  REQUIRE(r.status == 0);
  CHECK(slurp(dir.path / "edges.csv") == "source,target,weight\na,b,1\n");

  REQUIRE(invoke({"export", "--input", data("fixture8.jsonl"), "--out", dir.path.string(), "--format",
                  "gexf"}).status == 0);
  std::ifstream gexf(dir.path / "graph.gexf");
  const auto g = socnet::read_gexf(gexf);
  CHECK(g.node_count() == 8);
  CHECK(g.edge_count() == 7);

  CHECK(invoke({"export", "--input", data("one_edge.jsonl"), "--out", dir.path.string(), "--format", "svg"})
            .status == socnet::cli::kConfigError);
}

TEST_CASE("analyze output is identical across job counts") {
  TempDir dir;
  const auto a = dir.path / "a", b = dir.path / "b";
  const std::vector<std::string> common = {"--input", data("fixture8.jsonl"), "--format",
                                           "markdown,csv,gexf,dot,edge-csv", "--remove", "alice"};
  auto args_a = std::vector<std::string>{"analyze", "--out", a.string(), "--jobs", "1"};
  auto args_b = std::vector<std::string>{"analyze", "--out", b.string(), "--jobs", "4"};
  args_a.insert(args_a.end(), common.begin(), common.end());
  args_b.insert(args_b.end(), common.begin(), common.end());
  REQUIRE(invoke(args_a).status == 0);
  REQUIRE(invoke(args_b).status == 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "timings.json") continue;
    CAPTURE(name.string());
    CHECK(slurp(entry.path()) == slurp(b / name));
    ++compared;
  }
  CHECK(compared >= 10);
}

}  // TEST_SUITE
