#include "socnet/fetch.hpp"

#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "record_json.hpp"
#include "socnet/error.hpp"

namespace socnet {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // "/..." possibly with its own query string
};

SplitUrl split_url(const std::string& url) {
  constexpr std::string_view scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    throw FetchError("unsupported source URL (expected http://...): " + url, 0, 0);
  }
  const auto slash = url.find('/', scheme.size());
  SplitUrl out;
  out.origin = url.substr(0, slash);
  out.path = slash == std::string::npos ? "/" : url.substr(slash);
  if (out.origin.size() == scheme.size()) {
    throw FetchError("source URL has no host: " + url, 0, 0);
  }
  return out;
}

bool retryable(int status) { return status == 429 || (status >= 500 && status <= 599); }

}  // namespace

FetchResult fetch_paginated(const SourceConfig& source) {
  const SplitUrl url = split_url(source.base_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(source.timeout);
  client.set_read_timeout(source.timeout);
  client.set_keep_alive(true);

  FetchResult result;
  std::optional<std::string> cursor;
  std::size_t ordinal = 0;

  for (std::size_t page = 0; page < source.max_pages; ++page) {
    httplib::Params params(source.query.begin(), source.query.end());
    params.emplace("limit", std::to_string(source.page_size));
    if (cursor) params.emplace("cursor", *cursor);

    std::string body;
    int last_status = 0;
    bool ok = false;
    unsigned attempts = 0;
    for (unsigned attempt = 0; attempt <= source.retry_budget; ++attempt) {
      ++attempts;
      if (attempt > 0 && source.retry_backoff.count() > 0) {
        std::this_thread::sleep_for(source.retry_backoff * attempt);
      }
      auto res = client.Get(url.path, params, httplib::Headers{}, httplib::Progress{});
      if (!res) {
        last_status = 0;
        continue;
      }
      last_status = res->status;
      if (res->status == 200) {
        body = std::move(res->body);
        ok = true;
        break;
      }
      if (!retryable(res->status)) break;
    }
    if (!ok) {
      throw FetchError("page " + std::to_string(page) + " failed with status " +
                           std::to_string(last_status) + " after " +
                           std::to_string(attempts) + " attempt(s)",
                       last_status, page);
    }

    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw FetchError("page " + std::to_string(page) + " body is not a JSON object", 200, page);
    }
    const auto records = doc.find("records");
    if (records == doc.end() || !records->is_array()) {
      throw FetchError("page " + std::to_string(page) + " has no 'records' array", 200, page);
    }
    ++result.pages;
    for (const auto& item : *records) {
      ++ordinal;
      ParseIssue issue;
      if (auto rec = detail::record_from_json(item, ordinal, issue)) {
        result.records.push_back(std::move(*rec));
      } else {
        issue.detail += " (page " + std::to_string(page) + ")";
        result.issues.push_back(std::move(issue));
      }
    }

    const auto next = doc.find("next_cursor");
    if (records->empty() || next == doc.end() || !next->is_string() ||
        next->get_ref<const std::string&>().empty()) {
      break;
    }
    cursor = next->get<std::string>();
  }
  return result;
}

}  // namespace socnet
