#pragma once

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "socnet/ingest.hpp"

namespace socnet::detail {

/// Decodes one record object. On failure returns nullopt and fills `issue`.
std::optional<ConversationRecord> record_from_json(const nlohmann::json& object,
                                                   std::size_t line, ParseIssue& issue);

}  // namespace socnet::detail
