#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "socnet/error.hpp"
#include "socnet/fetch.hpp"
#include "socnet/ingest.hpp"
#include "socnet/metrics.hpp"

namespace socnet::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInputError = 3,
  kIoError = 4,
};

/// Bad flags or flag combinations (exit 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input missing, unreadable or unparseable (exit 3).
class InputError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<std::string> source_url;
  /// whatif only: a previous edge-csv or GEXF export instead of records.
  std::optional<std::filesystem::path> graph;

  std::set<std::string> terms;
  std::optional<Timestamp> from;
  std::optional<Timestamp> to;

  std::optional<std::filesystem::path> exclude_file;
  std::set<std::string> exclude;

  std::size_t top_k = 10;
  ClosenessVariant closeness = ClosenessVariant::component;
  std::vector<std::set<std::string>> what_if;
  std::filesystem::path out_dir = "out";
  std::vector<std::string> formats;
  unsigned jobs = 1;

  std::size_t page_size = 100;
  std::size_t max_pages = 1000;
  unsigned retries = 3;
};

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_whatif(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `socnet <analyze|whatif|export> [flags]` and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socnet::cli
