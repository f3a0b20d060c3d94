#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "socnet/ingest.hpp"

namespace socnet {

/// Cursor-paginated HTTP record source. Only plain http:// URLs are supported.
struct SourceConfig {
  std::string base_url;
  std::vector<std::pair<std::string, std::string>> query;
  std::size_t page_size = 100;
  std::size_t max_pages = 1000;
  unsigned retry_budget = 3;
  std::chrono::milliseconds retry_backoff{250};
  std::chrono::seconds timeout{30};
};

struct FetchResult {
  std::vector<ConversationRecord> records;
  /// Per-record defects; `line` is the 1-based ordinal across all pages.
  std::vector<ParseIssue> issues;
  std::size_t pages = 0;
};

/// GETs `base_url?limit=N[&cursor=C]` until the response has no `next_cursor`,
/// a page comes back empty, or `max_pages` pages were read. Transport errors,
/// 429 and 5xx are retried up to `retry_budget` times; anything else, or a body
/// that is not `{"records": [...]}`, throws FetchError.
FetchResult fetch_paginated(const SourceConfig& source);

}  // namespace socnet
