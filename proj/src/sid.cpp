#include "sigfed/sid.hpp"

#include "csv.hpp"
#include "sigfed/config.hpp"
#include "sigfed/errors.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

namespace sigfed {

SignificantInterval make_interval(std::string entity, Offset start, Offset end, std::int64_t access_count,
                                  std::int64_t point_count, std::int64_t periods) {
    SignificantInterval si;
    si.entity = std::move(entity);
    si.start = start;
    si.end = end;
    si.access_count = access_count;
    si.point_count = point_count;
    si.density = Percent::Rep(access_count, end - start + 1);
    si.confidence = Percent::of(access_count, periods);
    return si;
}

bool meets_confidence(std::int64_t access_count, std::int64_t periods, const Percent& min_conf) {
    return Percent::of(access_count, periods) >= min_conf;
}

namespace {

// Two-pointer sweep. For start i the smallest end reaching min_conf never moves
// left as i advances (counts are positive), so the window only grows at the
// right and shrinks at the left: one pass over the points.
std::vector<SignificantInterval> discover(const FoldedSeries& series, const Percent& min_conf,
                                          std::optional<Offset> max_len) {
    series.validate();
    check_min_conf(min_conf);
    if (max_len && *max_len < 0) throw ConfigError("max-len must be non-negative");

    const auto& pts = series.points;
    const std::int64_t n = series.period_count;
    std::vector<SignificantInterval> candidates;
    std::size_t next = 0;   // one past the window's last point
    std::int64_t sum = 0;   // access count of [start, next)
    for (std::size_t start = 0; start < pts.size(); ++start) {
        while (next < pts.size() && !meets_confidence(sum, n, min_conf)) sum += pts[next++].access_count;
        if (!meets_confidence(sum, n, min_conf)) break;  // later starts only see less
        const std::size_t last = next - 1;
        const Offset ts = pts[start].time_point;
        const Offset te = pts[last].time_point;
        if (!max_len || te - ts <= *max_len)
            candidates.push_back(make_interval(series.entity, ts, te, sum,
                                               static_cast<std::int64_t>(last - start + 1), n));
        sum -= pts[start].access_count;
    }
    return prune_contained(std::move(candidates));
}

}  // namespace

std::vector<SignificantInterval> one_pass_si(const FoldedSeries& series, const Percent& min_conf, Offset max_len) {
    return discover(series, min_conf, max_len);
}

std::vector<SignificantInterval> one_pass_allsi(const FoldedSeries& series, const Percent& min_conf) {
    return discover(series, min_conf, std::nullopt);
}

std::vector<SignificantInterval> prune_contained(std::vector<SignificantInterval> candidates) {
    // Walk by end ascending, start descending. Everything visited before a
    // group of identical bounds either ends earlier or ends together but
    // starts later, so the group contains one of them iff the largest start
    // seen so far is >= the group's start.
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = candidates[a];
        const auto& y = candidates[b];
        return x.end != y.end ? x.end < y.end : x.start > y.start;
    });

    std::vector<bool> keep(candidates.size(), true);
    std::optional<Offset> max_start;
    for (std::size_t g = 0; g < order.size();) {
        std::size_t h = g;
        const auto& first = candidates[order[g]];
        while (h < order.size() && candidates[order[h]].start == first.start &&
               candidates[order[h]].end == first.end)
            ++h;
        const bool contains_other = max_start && *max_start >= first.start;
        for (std::size_t k = g; k < h; ++k) keep[order[k]] = !contains_other;
        if (!max_start || first.start > *max_start) max_start = first.start;
        g = h;
    }

    std::vector<SignificantInterval> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (keep[i]) out.push_back(std::move(candidates[i]));
    std::stable_sort(out.begin(), out.end(), [](const SignificantInterval& a, const SignificantInterval& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    });
    return out;
}

PairRelation classify_pair(const SignificantInterval& a, const SignificantInterval& b) {
    if (a.start == b.start && a.end == b.end) return PairRelation::Equal;
    const bool a_in_b = a.start >= b.start && a.end <= b.end;
    const bool b_in_a = b.start >= a.start && b.end <= a.end;
    if (a_in_b || b_in_a) return PairRelation::Contained;
    if (std::max(a.start, b.start) <= std::min(a.end, b.end)) return PairRelation::Overlapping;
    return PairRelation::Disjoint;
}

std::string_view to_string(PairRelation relation) {
    switch (relation) {
        case PairRelation::Disjoint: return "disjoint";
        case PairRelation::Overlapping: return "overlapping";
        case PairRelation::Contained: return "contained";
        case PairRelation::Equal: return "equal";
    }
    return "?";
}

void write_intervals_csv(std::ostream& out, std::span<const SignificantInterval> intervals,
                         Periodicity periodicity, Granularity granularity) {
    std::vector<const SignificantInterval*> sorted;
    for (const auto& si : intervals) sorted.push_back(&si);
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        if (a->entity != b->entity) return a->entity < b->entity;
        return a->start != b->start ? a->start < b->start : a->end < b->end;
    });
    out << "# periodicity=" << to_string(periodicity) << " granularity=" << to_string(granularity) << '\n';
    out << "entity,startPoint,endPoint,accessCount,span,density,confidence,pointCount,startClock,endClock\n";
    for (const auto* si : sorted) {
        out << csv::escape(si->entity) << ',' << si->start << ',' << si->end << ',' << si->access_count << ','
            << si->span() << ',' << format_rational(si->density, 4) << ',' << si->confidence.format(2) << ','
            << si->point_count << ',' << format_clock(si->start, periodicity, granularity) << ','
            << format_clock(si->end, periodicity, granularity) << '\n';
    }
}

IntervalTable read_intervals_csv(std::istream& in) {
    IntervalTable table;
    std::map<std::string, std::size_t> column;
    std::string line;
    std::size_t line_no = 0;
    const auto col = [&](const std::vector<std::string>& fields, const char* name) -> std::optional<std::string> {
        const auto it = column.find(name);
        if (it == column.end() || it->second >= fields.size()) return std::nullopt;
        return fields[it->second];
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = csv::trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            try {
                for (const char* key : {"periodicity=", "granularity="}) {
                    const auto pos = body.find(key);
                    if (pos == std::string_view::npos) continue;
                    auto value = body.substr(pos + std::string_view(key).size());
                    value = value.substr(0, value.find(' '));
                    if (key[0] == 'p') table.periodicity = parse_periodicity(value);
                    else table.granularity = parse_granularity(value);
                }
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no);
            }
            continue;
        }
        const auto fields = csv::split(body);
        if (column.empty()) {
            for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
            for (const char* required : {"entity", "startPoint", "endPoint", "confidence"})
                if (!column.count(required))
                    throw ParseError(std::string("interval table lacks column '") + required + "'", line_no);
            continue;
        }
        SignificantInterval si;
        try {
            si.entity = col(fields, "entity").value_or("");
            if (si.entity.empty()) throw std::invalid_argument("empty entity");
            si.start = parse_offset(col(fields, "startPoint").value_or(""), table.periodicity, table.granularity);
            si.end = parse_offset(col(fields, "endPoint").value_or(""), table.periodicity, table.granularity);
            if (si.end < si.start) throw std::invalid_argument("endPoint before startPoint");
            si.confidence = Percent::parse(col(fields, "confidence").value_or(""));
            si.access_count = std::stoll(col(fields, "accessCount").value_or("0"));
            si.point_count = std::stoll(col(fields, "pointCount").value_or("0"));
            si.density = Percent::Rep(si.access_count, si.end - si.start + 1);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        } catch (const std::out_of_range& e) {
            throw ParseError(e.what(), line_no);
        }
        table.intervals.push_back(std::move(si));
    }
    return table;
}

}  // namespace sigfed
