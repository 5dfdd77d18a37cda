#include "ringdid/time_util.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace ringdid {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string iso8601_utc(std::int64_t unix_ms) {
    std::time_t seconds = unix_ms / 1000;
    int ms = static_cast<int>(unix_ms % 1000);
    if (ms < 0) {
        ms += 1000;
        seconds -= 1;
    }
    std::tm tm{};
    gmtime_r(&seconds, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, ms);
    return buf;
}

Result<std::int64_t> parse_iso8601(std::string_view text) {
    std::tm tm{};
    int ms = 0;
    char zulu = 0;
    std::string owned(text);
    int fields = std::sscanf(owned.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c", &tm.tm_year,
                             &tm.tm_mon, &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &ms,
                             &zulu);
    if (fields != 8 || zulu != 'Z')
        return make_error(Errc::wrong_field_type, "timestamp must be YYYY-MM-DDTHH:MM:SS.mmmZ");
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    std::time_t seconds = timegm(&tm);
    if (seconds == static_cast<std::time_t>(-1))
        return make_error(Errc::wrong_field_type, "timestamp out of range");
    return static_cast<std::int64_t>(seconds) * 1000 + ms;
}

}  // namespace ringdid
