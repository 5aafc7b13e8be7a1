#include "sigfed/folding.hpp"

#include "csv.hpp"
#include "sigfed/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace sigfed {

namespace {

constexpr std::int64_t kEpochMondayOffset = 4;  // 1970-01-05 was a Monday
constexpr std::array<std::string_view, 7> kWeekdays{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t epoch_days(const Timestamp& ts) { return ts.day.time_since_epoch().count(); }

Offset units_per_day(Granularity g) { return g == Granularity::Minute ? 1440 : 86400; }

std::optional<std::int64_t> to_integer(std::string_view text) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

}  // namespace

void FoldedSeries::validate() const {
    if (period_count <= 0) throw DataError("series '" + entity + "': period count must be positive");
    const Offset limit = period_length(periodicity, granularity);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.access_count < 1) throw DataError("series '" + entity + "': access count below 1");
        if (p.time_point < 0 || p.time_point >= limit)
            throw DataError("series '" + entity + "': time point outside the period");
        if (i > 0 && points[i - 1].time_point >= p.time_point)
            throw DataError("series '" + entity + "': time points not strictly increasing");
    }
}

std::int64_t FoldedSeries::total_access_count() const {
    std::int64_t total = 0;
    for (const auto& p : points) total += p.access_count;
    return total;
}

Offset period_length(Periodicity periodicity, Granularity granularity) {
    return units_per_day(granularity) * (periodicity == Periodicity::Daily ? 1 : 7);
}

std::int64_t period_index(const Timestamp& ts, Periodicity periodicity) {
    const std::int64_t days = epoch_days(ts);
    return periodicity == Periodicity::Daily ? days : floor_div(days - kEpochMondayOffset, 7);
}

Offset fold_offset(const Timestamp& ts, Periodicity periodicity, Granularity granularity) {
    const Offset in_day = granularity == Granularity::Minute ? ts.second_of_day / 60 : ts.second_of_day;
    if (periodicity == Periodicity::Daily) return in_day;
    const std::int64_t days = epoch_days(ts) - kEpochMondayOffset;
    const std::int64_t weekday = days - floor_div(days, 7) * 7;
    return weekday * units_per_day(granularity) + in_day;
}

std::int64_t period_count(std::span<const LogRecord> records, Periodicity periodicity,
                          std::optional<std::int64_t> n_override) {
    if (n_override) {
        if (*n_override <= 0) throw ConfigError("period count override must be positive");
        return *n_override;
    }
    if (records.empty()) throw DataError("cannot count periods of an empty record set without an override");
    const auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                              [](const LogRecord& a, const LogRecord& b) {
                                                  return a.timestamp < b.timestamp;
                                              });
    return period_index(hi->timestamp, periodicity) - period_index(lo->timestamp, periodicity) + 1;
}

FoldedSeries fold(std::span<const LogRecord> records, Periodicity periodicity, Granularity granularity,
                  std::optional<std::int64_t> n_override) {
    FoldedSeries series;
    series.periodicity = periodicity;
    series.granularity = granularity;
    series.period_count = period_count(records, periodicity, n_override);
    if (records.empty()) return series;

    series.entity = records.front().entity;
    std::map<Offset, std::int64_t> counts;
    for (const auto& r : records) {
        if (r.entity != series.entity)
            throw DataError("fold expects one entity, found '" + series.entity + "' and '" + r.entity + "'");
        if (r.status != AccessStatus::Access) throw DataError("fold expects cleaned (Access-only) records");
        ++counts[fold_offset(r.timestamp, periodicity, granularity)];
    }
    series.points.reserve(counts.size());
    for (const auto& [t, n] : counts) series.points.push_back({t, n});
    return series;
}

std::vector<FoldedSeries> fold_all(const EntityPartition& partition, Periodicity periodicity,
                                   Granularity granularity, std::optional<std::int64_t> n_override) {
    std::optional<std::int64_t> n = n_override;
    if (!n) {
        std::vector<LogRecord> all;
        for (const auto& [_, recs] : partition) all.insert(all.end(), recs.begin(), recs.end());
        if (all.empty()) return {};
        n = period_count(all, periodicity);
    }
    std::vector<FoldedSeries> out;
    out.reserve(partition.size());
    for (const auto& [_, recs] : partition) out.push_back(fold(recs, periodicity, granularity, n));
    return out;
}

std::string format_clock(Offset offset, Periodicity periodicity, Granularity granularity) {
    std::string out;
    Offset in_day = offset;
    if (periodicity == Periodicity::Weekly) {
        const Offset per_day = units_per_day(granularity);
        out = std::string(kWeekdays[static_cast<std::size_t>((offset / per_day) % 7)]) + " ";
        in_day = offset % per_day;
    }
    const Offset seconds = granularity == Granularity::Minute ? in_day * 60 : in_day;
    const auto two = [](Offset v) { return (v < 10 ? "0" : "") + std::to_string(v); };
    out += std::to_string(seconds / 3600) + ":" + two(seconds / 60 % 60);
    if (granularity == Granularity::Second) out += ":" + two(seconds % 60);
    return out;
}

Offset parse_offset(std::string_view text, Periodicity periodicity, Granularity granularity) {
    text = csv::trim(text);
    const std::string original(text);
    if (auto v = to_integer(text)) {
        if (*v < 0 || *v >= period_length(periodicity, granularity))
            throw std::invalid_argument("time point out of range: " + original);
        return *v;
    }
    Offset weekday = 0;
    if (periodicity == Periodicity::Weekly) {
        const auto space = text.find(' ');
        const auto it = space == std::string_view::npos
                            ? kWeekdays.end()
                            : std::find(kWeekdays.begin(), kWeekdays.end(), text.substr(0, space));
        if (it == kWeekdays.end()) throw std::invalid_argument("weekly clock needs a weekday prefix: " + original);
        weekday = it - kWeekdays.begin();
        text = csv::trim(text.substr(space + 1));
    }
    std::vector<std::int64_t> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        const auto piece = text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos);
        const auto v = to_integer(piece);
        if (!v) throw std::invalid_argument("malformed clock: " + original);
        parts.push_back(*v);
        if (colon == std::string_view::npos) break;
        pos = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("malformed clock: " + original);
    const std::int64_t h = parts[0], m = parts[1], s = parts.size() == 3 ? parts[2] : 0;
    if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59)
        throw std::invalid_argument("malformed clock: " + original);
    if (granularity == Granularity::Minute && s != 0)
        throw std::invalid_argument("seconds given at minute granularity: " + original);
    const Offset in_day = granularity == Granularity::Minute ? h * 60 + m : h * 3600 + m * 60 + s;
    return weekday * units_per_day(granularity) + in_day;
}

Periodicity parse_periodicity(std::string_view text) {
    const auto key = csv::lower(csv::trim(text));
    if (key == "daily" || key == "day") return Periodicity::Daily;
    if (key == "weekly" || key == "week") return Periodicity::Weekly;
    throw std::invalid_argument("unknown periodicity '" + std::string(text) + "'");
}

Granularity parse_granularity(std::string_view text) {
    const auto key = csv::lower(csv::trim(text));
    if (key == "minute" || key == "minutes") return Granularity::Minute;
    if (key == "second" || key == "seconds") return Granularity::Second;
    throw std::invalid_argument("unknown granularity '" + std::string(text) + "'");
}

std::string_view to_string(Periodicity p) { return p == Periodicity::Daily ? "daily" : "weekly"; }
std::string_view to_string(Granularity g) { return g == Granularity::Minute ? "minute" : "second"; }

void write_folded_csv(std::ostream& out, std::span<const FoldedSeries> series) {
    const Periodicity periodicity = series.empty() ? Periodicity::Daily : series.front().periodicity;
    const Granularity granularity = series.empty() ? Granularity::Minute : series.front().granularity;
    const std::int64_t n = series.empty() ? 0 : series.front().period_count;
    for (const auto& s : series)
        if (s.periodicity != periodicity || s.granularity != granularity || s.period_count != n)
            throw DataError("folded table requires one periodicity, granularity and N");
    out << "# periodicity=" << to_string(periodicity) << " granularity=" << to_string(granularity) << " n=" << n
        << '\n';
    out << "entity,timePoint,accessCount,clock\n";
    for (const auto& s : series)
        for (const auto& p : s.points)
            out << csv::escape(s.entity) << ',' << p.time_point << ',' << p.access_count << ','
                << format_clock(p.time_point, periodicity, granularity) << '\n';
}

std::vector<FoldedSeries> read_folded_csv(std::istream& in) {
    Periodicity periodicity = Periodicity::Daily;
    Granularity granularity = Granularity::Minute;
    std::optional<std::int64_t> n;
    std::vector<FoldedSeries> out;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = csv::trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            std::string_view rest = body.substr(1);
            while (!rest.empty()) {
                rest = csv::trim(rest);
                const auto sp = rest.find(' ');
                const auto token = rest.substr(0, sp);
                rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp);
                const auto eq = token.find('=');
                if (eq == std::string_view::npos) continue;
                const auto key = token.substr(0, eq);
                const auto value = token.substr(eq + 1);
                try {
                    if (key == "periodicity") periodicity = parse_periodicity(value);
                    else if (key == "granularity") granularity = parse_granularity(value);
                    else if (key == "n") n = to_integer(value);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), line_no);
                }
            }
            continue;
        }
        const auto fields = csv::split(body);
        if (!header_seen && !fields.empty() && csv::lower(fields[0]) == "entity") {
            header_seen = true;
            continue;
        }
        header_seen = true;
        if (fields.size() < 3) throw ParseError("expected entity,timePoint,accessCount", line_no);
        if (fields[0].empty()) throw ParseError("empty entity", line_no);
        FoldedPoint point;
        try {
            point.time_point = parse_offset(fields[1], periodicity, granularity);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        const auto count = to_integer(fields[2]);
        if (!count || *count < 1) throw ParseError("access count must be a positive integer", line_no);
        point.access_count = *count;
        auto [it, inserted] = index.try_emplace(fields[0], out.size());
        if (inserted) {
            FoldedSeries s;
            s.entity = fields[0];
            out.push_back(std::move(s));
        }
        out[it->second].points.push_back(point);
    }
    if (!out.empty() && (!n || *n <= 0)) throw DataError("folded table is missing a positive n in its header comment");
    for (auto& s : out) {
        s.periodicity = periodicity;
        s.granularity = granularity;
        s.period_count = *n;
        std::sort(s.points.begin(), s.points.end(),
                  [](const FoldedPoint& a, const FoldedPoint& b) { return a.time_point < b.time_point; });
        s.validate();
    }
    return out;
}

}  // namespace sigfed
