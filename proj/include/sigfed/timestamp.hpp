#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace sigfed {

enum class TimestampFormat {
    Auto,    ///< try US style first, then ISO-8601
    US,      ///< "4/15/2009 2:05 pm"
    Iso,     ///< "2009-04-15 14:05" or "2009-04-15T14:05:30"
};

/// A naive local calendar instant with second resolution.
struct Timestamp {
    std::chrono::sys_days day{};
    std::int32_t second_of_day = 0;  // [0, 86400)

    std::chrono::year_month_day date() const { return std::chrono::year_month_day{day}; }

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute, int second = 0);

/// Throws std::invalid_argument on anything that is not a valid calendar instant.
Timestamp parse_timestamp(std::string_view text, TimestampFormat format = TimestampFormat::Auto);

/// ISO form "YYYY-MM-DD HH:MM", with ":SS" appended only when seconds are non-zero.
std::string format_timestamp(const Timestamp& ts);

}  // namespace sigfed
