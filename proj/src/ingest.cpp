#include "sigfed/ingest.hpp"

#include "csv.hpp"
#include "sigfed/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace sigfed {

AccessStatus parse_status(std::string_view text) {
    std::string key;
    for (char c : csv::lower(csv::trim(text)))
        if (c != ' ' && c != '_' && c != '-') key += c;
    if (key == "access") return AccessStatus::Access;
    if (key == "notaccess") return AccessStatus::NotAccess;
    throw std::invalid_argument("unknown access status '" + std::string(text) + "'");
}

std::string_view to_string(AccessStatus status) {
    return status == AccessStatus::Access ? "Access" : "NotAccess";
}

std::vector<LogRecord> parse_log(std::istream& in, TimestampFormat format) {
    std::vector<LogRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = csv::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto fields = csv::split(body);
        if (first_content) {
            first_content = false;
            if (fields.size() == 3 && csv::lower(fields[1]).find("status") != std::string::npos) continue;
        }
        if (fields.size() != 3)
            throw ParseError("expected 3 fields (entity,status,timestamp), got " + std::to_string(fields.size()),
                             line_no);
        if (fields[0].empty()) throw ParseError("empty entity", line_no);
        LogRecord rec;
        rec.entity = fields[0];
        try {
            rec.status = parse_status(fields[1]);
            rec.timestamp = parse_timestamp(fields[2], format);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<LogRecord> parse_log(std::string_view text, TimestampFormat format) {
    std::istringstream in{std::string(text)};
    return parse_log(in, format);
}

void write_log(std::ostream& out, std::span<const LogRecord> records) {
    out << "entity,status,timestamp\n";
    for (const auto& r : records)
        out << csv::escape(r.entity) << ',' << to_string(r.status) << ',' << format_timestamp(r.timestamp) << '\n';
}

EntityPartition clean(std::span<const LogRecord> records) {
    EntityPartition partition;
    for (const auto& r : records)
        if (r.status == AccessStatus::Access) partition[r.entity].push_back(r);
    return partition;
}

}  // namespace sigfed
