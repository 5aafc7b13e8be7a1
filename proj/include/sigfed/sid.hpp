#pragma once

#include "sigfed/folding.hpp"
#include "sigfed/percent.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sigfed {

/// [Ts, Te, ac, l, d, c] for one entity.
///
/// `span()` is the clock difference Te - Ts and is what max-Len constrains.
/// `length()` is the inclusive Te - Ts + 1 used as the density denominator.
struct SignificantInterval {
    std::string entity;
    Offset start = 0;
    Offset end = 0;
    std::int64_t access_count = 0;
    std::int64_t point_count = 0;
    Percent::Rep density{0};
    Percent confidence;

    Offset span() const { return end - start; }
    Offset length() const { return end - start + 1; }

    friend bool operator==(const SignificantInterval&, const SignificantInterval&) = default;
};

/// Builds an interval with density and confidence derived from ac, N and bounds.
SignificantInterval make_interval(std::string entity, Offset start, Offset end,
                                  std::int64_t access_count, std::int64_t point_count,
                                  std::int64_t periods);

/// True iff 100 * access_count / periods >= min_conf, evaluated exactly.
bool meets_confidence(std::int64_t access_count, std::int64_t periods, const Percent& min_conf);

/// Single pass over the folded points. Every point is tried as a start; the
/// window grows until it first reaches min_conf, and the candidate is kept when
/// its span is at most max_len. Containing candidates are then pruned.
/// Result sorted by (start, end).
std::vector<SignificantInterval> one_pass_si(const FoldedSeries& series, const Percent& min_conf,
                                             Offset max_len);

/// one_pass_si without the length constraint.
std::vector<SignificantInterval> one_pass_allsi(const FoldedSeries& series, const Percent& min_conf);

/// Removes every interval that strictly contains another one. Intervals with
/// identical bounds do not invalidate each other. Result sorted by (start, end).
std::vector<SignificantInterval> prune_contained(std::vector<SignificantInterval> candidates);

enum class PairRelation { Disjoint, Overlapping, Contained, Equal };

PairRelation classify_pair(const SignificantInterval& a, const SignificantInterval& b);
std::string_view to_string(PairRelation relation);

/// Interval table sorted by (entity, start, end). Columns:
/// entity,startPoint,endPoint,accessCount,span,density,confidence,pointCount,startClock,endClock
/// preceded by a "# periodicity=... granularity=..." comment.
void write_intervals_csv(std::ostream& out, std::span<const SignificantInterval> intervals,
                         Periodicity periodicity, Granularity granularity);

struct IntervalTable {
    Periodicity periodicity = Periodicity::Daily;
    Granularity granularity = Granularity::Minute;
    std::vector<SignificantInterval> intervals;  // file order
};

/// Reads an interval table. Only entity, startPoint, endPoint and confidence
/// are required; time points may be integers or clock strings ("1:00").
IntervalTable read_intervals_csv(std::istream& in);

}  // namespace sigfed
