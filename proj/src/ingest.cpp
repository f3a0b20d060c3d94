#include "socnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "record_json.hpp"
#include "socnet/error.hpp"

namespace socnet {

namespace {

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_forbidden(unsigned char c) {
  return c <= 0x20 || c == 0x7f || c == ',' || c == '"';
}

std::optional<std::string> normalize_token(std::string_view raw, char sigil) {
  while (!raw.empty() && raw.front() == sigil) raw.remove_prefix(1);
  if (raw.empty()) return std::nullopt;
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (is_forbidden(static_cast<unsigned char>(c))) return std::nullopt;
    out.push_back(ascii_lower(c));
  }
  return out;
}

std::string lower_copy(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

template <typename Int>
bool read_fixed(std::string_view text, std::size_t pos, std::size_t width, Int& out) {
  if (pos + width > text.size()) return false;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + width, out);
  return ec == std::errc{} && ptr == text.data() + pos + width;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  });
}

ParseIssue make_issue(std::size_t line, IssueCause cause, std::string detail) {
  return ParseIssue{line, cause, std::move(detail)};
}

}  // namespace

std::string_view to_string(Sentiment s) noexcept {
  switch (s) {
    case Sentiment::positive: return "positive";
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
    case Sentiment::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(IssueCause c) noexcept {
  switch (c) {
    case IssueCause::malformed_json: return "malformed-json";
    case IssueCause::not_an_object: return "not-an-object";
    case IssueCause::missing_id: return "missing-id";
    case IssueCause::missing_author: return "missing-author";
    case IssueCause::invalid_author: return "invalid-author";
    case IssueCause::invalid_mention: return "invalid-mention";
    case IssueCause::invalid_hashtag: return "invalid-hashtag";
    case IssueCause::missing_timestamp: return "missing-timestamp";
    case IssueCause::invalid_timestamp: return "invalid-timestamp";
    case IssueCause::invalid_sentiment: return "invalid-sentiment";
    case IssueCause::invalid_field: return "invalid-field";
  }
  return "unknown";
}

std::optional<std::string> normalize_handle(std::string_view raw) {
  return normalize_token(raw, '@');
}

std::optional<std::string> normalize_hashtag(std::string_view raw) {
  return normalize_token(raw, '#');
}

std::optional<Timestamp> parse_rfc3339(std::string_view text) {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SS
  if (text.size() < 20) return std::nullopt;
  int year = 0;
  unsigned month = 0, day = 0;
  int hour = 0, minute = 0, second = 0;
  if (!read_fixed(text, 0, 4, year) || text[4] != '-' || !read_fixed(text, 5, 2, month) ||
      text[7] != '-' || !read_fixed(text, 8, 2, day)) {
    return std::nullopt;
  }
  if (text[10] != 'T' && text[10] != 't') return std::nullopt;
  if (!read_fixed(text, 11, 2, hour) || text[13] != ':' || !read_fixed(text, 14, 2, minute) ||
      text[16] != ':' || !read_fixed(text, 17, 2, second)) {
    return std::nullopt;
  }
  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  if (!ymd.ok()) return std::nullopt;

  std::size_t pos = 19;
  std::int64_t micros = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t digits_start = pos;
    int scale = 100000;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      micros += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == digits_start) return std::nullopt;
  }
  if (pos >= text.size()) return std::nullopt;

  minutes offset{0};
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '-' ? -1 : 1;
    int off_h = 0, off_m = 0;
    if (!read_fixed(text, pos + 1, 2, off_h) || pos + 3 >= text.size() || text[pos + 3] != ':' ||
        !read_fixed(text, pos + 4, 2, off_m) || off_h > 23 || off_m > 59) {
      return std::nullopt;
    }
    offset = minutes{sign * (off_h * 60 + off_m)};
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;

  const auto local = sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second};
  return time_point_cast<microseconds>(local - offset) + microseconds{micros};
}

std::string format_rfc3339(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss tod{t - day_point};
  char buf[48];
  const auto frac = tod.subseconds().count();
  if (frac == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), long(tod.hours().count()),
                  long(tod.minutes().count()), long(tod.seconds().count()));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%06ldZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), long(tod.hours().count()),
                  long(tod.minutes().count()), long(tod.seconds().count()), long(frac));
  }
  return buf;
}

namespace detail {

std::optional<ConversationRecord> record_from_json(const nlohmann::json& object,
                                                   std::size_t line, ParseIssue& issue) {
  if (!object.is_object()) {
    issue = make_issue(line, IssueCause::not_an_object, "record is not a JSON object");
    return std::nullopt;
  }
  ConversationRecord rec;

  const auto id = object.find("id");
  if (id == object.end() || id->is_null()) {
    issue = make_issue(line, IssueCause::missing_id, "no 'id' field");
    return std::nullopt;
  }
  if (id->is_string()) {
    rec.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    rec.id = id->dump();
  } else {
    issue = make_issue(line, IssueCause::invalid_field, "'id' must be a string");
    return std::nullopt;
  }

  const auto author = object.find("author");
  if (author == object.end() || author->is_null()) {
    issue = make_issue(line, IssueCause::missing_author, "no 'author' field");
    return std::nullopt;
  }
  if (!author->is_string()) {
    issue = make_issue(line, IssueCause::invalid_author, "'author' must be a string");
    return std::nullopt;
  }
  auto author_handle = normalize_handle(author->get_ref<const std::string&>());
  if (!author_handle) {
    issue = make_issue(line, IssueCause::invalid_author,
                       "unusable author handle '" + author->get<std::string>() + "'");
    return std::nullopt;
  }
  rec.author = std::move(*author_handle);

  if (const auto mentions = object.find("mentions");
      mentions != object.end() && !mentions->is_null()) {
    if (!mentions->is_array()) {
      issue = make_issue(line, IssueCause::invalid_field, "'mentions' must be an array");
      return std::nullopt;
    }
    for (const auto& m : *mentions) {
      std::optional<std::string> handle;
      if (m.is_string()) handle = normalize_handle(m.get_ref<const std::string&>());
      if (!handle) {
        issue = make_issue(line, IssueCause::invalid_mention, "unusable mention " + m.dump());
        return std::nullopt;
      }
      if (*handle == rec.author) continue;
      if (std::find(rec.mentions.begin(), rec.mentions.end(), *handle) == rec.mentions.end()) {
        rec.mentions.push_back(std::move(*handle));
      }
    }
  }

  if (const auto tags = object.find("hashtags"); tags != object.end() && !tags->is_null()) {
    if (!tags->is_array()) {
      issue = make_issue(line, IssueCause::invalid_field, "'hashtags' must be an array");
      return std::nullopt;
    }
    for (const auto& t : *tags) {
      std::optional<std::string> tag;
      if (t.is_string()) tag = normalize_hashtag(t.get_ref<const std::string&>());
      if (!tag) {
        issue = make_issue(line, IssueCause::invalid_hashtag, "unusable hashtag " + t.dump());
        return std::nullopt;
      }
      if (std::find(rec.hashtags.begin(), rec.hashtags.end(), *tag) == rec.hashtags.end()) {
        rec.hashtags.push_back(std::move(*tag));
      }
    }
  }

  const auto ts = object.find("timestamp");
  if (ts == object.end() || ts->is_null()) {
    issue = make_issue(line, IssueCause::missing_timestamp, "no 'timestamp' field");
    return std::nullopt;
  }
  std::optional<Timestamp> parsed_ts;
  if (ts->is_string()) parsed_ts = parse_rfc3339(ts->get_ref<const std::string&>());
  if (!parsed_ts) {
    issue = make_issue(line, IssueCause::invalid_timestamp, "not an RFC 3339 instant: " + ts->dump());
    return std::nullopt;
  }
  rec.timestamp = *parsed_ts;

  if (const auto s = object.find("sentiment"); s != object.end() && !s->is_null()) {
    const std::string label = s->is_string() ? lower_copy(s->get_ref<const std::string&>()) : "";
    if (label == "positive") {
      rec.sentiment = Sentiment::positive;
    } else if (label == "negative") {
      rec.sentiment = Sentiment::negative;
    } else if (label == "neutral") {
      rec.sentiment = Sentiment::neutral;
    } else if (label == "unknown") {
      rec.sentiment = Sentiment::unknown;
    } else {
      issue = make_issue(line, IssueCause::invalid_sentiment, "unrecognised sentiment " + s->dump());
      return std::nullopt;
    }
  }

  if (const auto text = object.find("text"); text != object.end() && !text->is_null()) {
    if (!text->is_string()) {
      issue = make_issue(line, IssueCause::invalid_field, "'text' must be a string");
      return std::nullopt;
    }
    rec.text = text->get<std::string>();
  }
  return rec;
}

}  // namespace detail

ParseResult parse_records(std::istream& input) {
  ParseResult result;
  if (!input) throw IoError("input stream is not readable");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto json = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (json.is_discarded()) {
      result.issues.push_back(make_issue(line_no, IssueCause::malformed_json, "line is not valid JSON"));
      continue;
    }
    ParseIssue issue;
    if (auto rec = detail::record_from_json(json, line_no, issue)) {
      result.records.push_back(std::move(*rec));
    } else {
      result.issues.push_back(std::move(issue));
    }
  }
  if (input.bad()) throw IoError("read error after line " + std::to_string(line_no));
  return result;
}

ParseResult parse_records(std::string_view input) {
  std::istringstream stream{std::string(input)};
  return parse_records(stream);
}

FilterSpec::FilterSpec(std::set<std::string> terms, std::optional<Timestamp> start,
                       std::optional<Timestamp> end)
    : start_(start), end_(end) {
  if (start_ && end_ && !(*start_ < *end_)) {
    throw std::invalid_argument("filter window requires start < end");
  }
  for (const auto& t : terms) terms_.insert(lower_copy(t));
}

bool FilterSpec::matches(const ConversationRecord& record) const {
  if (start_ && record.timestamp < *start_) return false;
  if (end_ && !(record.timestamp < *end_)) return false;
  if (terms_.empty()) return true;
  for (const auto& tag : record.hashtags) {
    if (terms_.contains(tag)) return true;
  }
  if (record.text) {
    const std::string haystack = lower_copy(*record.text);
    for (const auto& term : terms_) {
      if (haystack.find(term) != std::string::npos) return true;
    }
  }
  return false;
}

std::vector<ConversationRecord> filter_records(std::span<const ConversationRecord> records,
                                               const FilterSpec& spec) {
  std::vector<ConversationRecord> out;
  for (const auto& r : records) {
    if (spec.matches(r)) out.push_back(r);
  }
  return out;
}

std::vector<InteractionEdge> extract_interactions(std::span<const ConversationRecord> records) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
  std::unordered_set<std::string_view> seen;
  for (const auto& r : records) {
    seen.clear();
    for (const auto& m : r.mentions) {
      if (m == r.author || !seen.insert(m).second) continue;
      auto key = r.author < m ? std::pair{r.author, m} : std::pair{m, r.author};
      ++pairs[std::move(key)];
    }
  }
  std::vector<InteractionEdge> edges;
  edges.reserve(pairs.size());
  for (auto& [key, weight] : pairs) edges.push_back({key.first, key.second, weight});
  return edges;
}

std::vector<std::string> collect_actors(std::span<const ConversationRecord> records) {
  std::vector<std::string> actors;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& h) {
    if (seen.insert(h).second) actors.push_back(h);
  };
  for (const auto& r : records) {
    add(r.author);
    for (const auto& m : r.mentions) add(m);
  }
  return actors;
}

}  // namespace socnet
