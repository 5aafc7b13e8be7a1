#pragma once

#include "sigfed/timestamp.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigfed {

enum class AccessStatus { Access, NotAccess };

/// One raw log line: which entity, whether it was accessed, and when.
struct LogRecord {
    std::string entity;
    AccessStatus status = AccessStatus::Access;
    Timestamp timestamp;

    friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

using EntityPartition = std::map<std::string, std::vector<LogRecord>>;

/// Reads comma-separated `entity,status,timestamp` rows. A header row is
/// optional, blank lines and lines starting with '#' are skipped. Fields may be
/// double-quoted. Throws ParseError carrying the offending line number.
std::vector<LogRecord> parse_log(std::istream& in, TimestampFormat format = TimestampFormat::Auto);
std::vector<LogRecord> parse_log(std::string_view text, TimestampFormat format = TimestampFormat::Auto);

/// Writes a header row followed by one row per record (ISO timestamps).
/// parse_log reads the result back to the same records.
void write_log(std::ostream& out, std::span<const LogRecord> records);

/// Drops every NotAccess record and partitions the rest by entity, keeping
/// input order inside each partition.
EntityPartition clean(std::span<const LogRecord> records);

AccessStatus parse_status(std::string_view text);
std::string_view to_string(AccessStatus status);

}  // namespace sigfed
