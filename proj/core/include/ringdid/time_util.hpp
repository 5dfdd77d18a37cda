#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ringdid/result.hpp"

namespace ringdid {

std::int64_t now_ms();

/// "YYYY-MM-DDTHH:MM:SS.mmmZ", UTC.
std::string iso8601_utc(std::int64_t unix_ms);
Result<std::int64_t> parse_iso8601(std::string_view text);

}  // namespace ringdid
