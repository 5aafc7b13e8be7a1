#include "sigfed/timestamp.hpp"

#include "csv.hpp"

#include <cstdio>
#include <regex>
#include <stdexcept>
#include <string>

namespace sigfed {

namespace {

using namespace std::chrono;

const std::regex& us_pattern() {
    static const std::regex re(R"(^(\d{1,2})/(\d{1,2})/(\d{4})\s+(\d{1,2}):(\d{2})(?::(\d{2}))?\s*([AaPp][Mm])?$)");
    return re;
}

const std::regex& iso_pattern() {
    static const std::regex re(R"(^(\d{4})-(\d{2})-(\d{2})[T ](\d{2}):(\d{2})(?::(\d{2}))?$)");
    return re;
}

int to_int(const std::ssub_match& m) { return m.matched ? std::stoi(m.str()) : 0; }

Timestamp build(const std::string& text, int y, int mo, int d, int h, int mi, int s) {
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date in '" + text + "'");
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59)
        throw std::invalid_argument("invalid time of day in '" + text + "'");
    return Timestamp{sys_days{ymd}, h * 3600 + mi * 60 + s};
}

bool try_us(const std::string& text, Timestamp& out) {
    std::smatch m;
    if (!std::regex_match(text, m, us_pattern())) return false;
    int hour = to_int(m[4]);
    if (m[7].matched) {
        if (hour < 1 || hour > 12) throw std::invalid_argument("invalid 12-hour clock in '" + text + "'");
        const bool pm = m[7].str()[0] == 'p' || m[7].str()[0] == 'P';
        hour = hour % 12 + (pm ? 12 : 0);
    }
    out = build(text, to_int(m[3]), to_int(m[1]), to_int(m[2]), hour, to_int(m[5]), to_int(m[6]));
    return true;
}

bool try_iso(const std::string& text, Timestamp& out) {
    std::smatch m;
    if (!std::regex_match(text, m, iso_pattern())) return false;
    out = build(text, to_int(m[1]), to_int(m[2]), to_int(m[3]), to_int(m[4]), to_int(m[5]), to_int(m[6]));
    return true;
}

}  // namespace

Timestamp make_timestamp(int y, unsigned mo, unsigned d, int h, int mi, int s) {
    return build("constructed timestamp", y, static_cast<int>(mo), static_cast<int>(d), h, mi, s);
}

Timestamp parse_timestamp(std::string_view text, TimestampFormat format) {
    const std::string s(csv::trim(text));
    Timestamp ts;
    switch (format) {
        case TimestampFormat::US:
            if (try_us(s, ts)) return ts;
            break;
        case TimestampFormat::Iso:
            if (try_iso(s, ts)) return ts;
            break;
        case TimestampFormat::Auto:
            if (try_us(s, ts) || try_iso(s, ts)) return ts;
            break;
    }
    throw std::invalid_argument("unrecognised timestamp '" + s + "'");
}

std::string format_timestamp(const Timestamp& ts) {
    const year_month_day ymd = ts.date();
    const int h = ts.second_of_day / 3600;
    const int mi = ts.second_of_day / 60 % 60;
    const int sec = ts.second_of_day % 60;
    char buf[32];
    if (sec == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), h, mi);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), h, mi, sec);
    }
    return buf;
}

}  // namespace sigfed
