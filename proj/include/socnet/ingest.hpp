#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace socnet {

using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;

enum class Sentiment : std::uint8_t { positive, negative, neutral, unknown };

inline constexpr std::size_t kSentimentCount = 4;

std::string_view to_string(Sentiment s) noexcept;

/// One conversation message. Handles are stored normalized.
struct ConversationRecord {
  std::string id;
  std::string author;
  std::vector<std::string> mentions;
  std::vector<std::string> hashtags;
  Timestamp timestamp{};
  Sentiment sentiment = Sentiment::unknown;
  std::optional<std::string> text;

  bool operator==(const ConversationRecord&) const = default;
};

enum class IssueCause : std::uint8_t {
  malformed_json,
  not_an_object,
  missing_id,
  missing_author,
  invalid_author,
  invalid_mention,
  invalid_hashtag,
  missing_timestamp,
  invalid_timestamp,
  invalid_sentiment,
  invalid_field,
};

std::string_view to_string(IssueCause c) noexcept;

/// A defect found on one input line. `line` is 1-based.
struct ParseIssue {
  std::size_t line = 0;
  IssueCause cause = IssueCause::malformed_json;
  std::string detail;
};

struct ParseResult {
  std::vector<ConversationRecord> records;
  std::vector<ParseIssue> issues;
};

/// Lowercases ASCII letters and strips leading '@' characters. Returns an
/// empty optional when the result is empty or contains whitespace, control
/// characters, commas or double quotes (handles must be safe as bare CSV
/// fields and DOT identifiers).
std::optional<std::string> normalize_handle(std::string_view raw);

/// Lowercased tag with leading '#' characters stripped.
std::optional<std::string> normalize_hashtag(std::string_view raw);

/// RFC 3339 date-time ("2013-07-01T00:00:00Z", optional fraction, 'Z' or
/// +hh:mm offset). Fractions beyond microseconds are truncated.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

/// Canonical UTC rendering, "YYYY-MM-DDTHH:MM:SS[.ffffff]Z".
std::string format_rfc3339(Timestamp t);

/// Parses one JSON object per line. Blank lines are skipped; defective lines
/// become issues. Throws IoError when the stream itself fails.
ParseResult parse_records(std::istream& input);
ParseResult parse_records(std::string_view input);

/// Keyword/hashtag terms and an optional half-open [start, end) window.
class FilterSpec {
 public:
  FilterSpec() = default;

  /// Terms are lowercased. Throws std::invalid_argument unless start < end.
  FilterSpec(std::set<std::string> terms, std::optional<Timestamp> start,
             std::optional<Timestamp> end);

  const std::set<std::string>& terms() const noexcept { return terms_; }
  const std::optional<Timestamp>& start() const noexcept { return start_; }
  const std::optional<Timestamp>& end() const noexcept { return end_; }

  bool matches(const ConversationRecord& record) const;

 private:
  std::set<std::string> terms_;
  std::optional<Timestamp> start_;
  std::optional<Timestamp> end_;
};

std::vector<ConversationRecord> filter_records(std::span<const ConversationRecord> records,
                                               const FilterSpec& spec);

/// Canonical undirected pair: a < b, weight >= 1.
struct InteractionEdge {
  std::string a;
  std::string b;
  std::uint64_t weight = 1;

  auto operator<=>(const InteractionEdge&) const = default;
};

/// Aggregates author/mention incidences into sorted canonical edges.
std::vector<InteractionEdge> extract_interactions(std::span<const ConversationRecord> records);

/// Every distinct actor (authors and mentions) in first-appearance order.
std::vector<std::string> collect_actors(std::span<const ConversationRecord> records);

}  // namespace socnet
