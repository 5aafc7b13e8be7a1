#pragma once

#include "sigfed/ingest.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigfed {

enum class Periodicity { Daily, Weekly };
enum class Granularity { Minute, Second };

/// Offset from the start of a period, in granularity units.
using Offset = std::int64_t;

struct FoldedPoint {
    Offset time_point = 0;
    std::int64_t access_count = 0;

    friend bool operator==(const FoldedPoint&, const FoldedPoint&) = default;
};

/// One entity's accesses folded over a period: strictly increasing time points,
/// each with a positive access count, plus the number N of periods observed.
struct FoldedSeries {
    std::string entity;
    Periodicity periodicity = Periodicity::Daily;
    Granularity granularity = Granularity::Minute;
    std::vector<FoldedPoint> points;
    std::int64_t period_count = 0;

    /// Throws DataError when an invariant does not hold.
    void validate() const;

    std::int64_t total_access_count() const;
};

/// Period length in granularity units (1440 for daily/minute, 10080 for weekly/minute, ...).
Offset period_length(Periodicity periodicity, Granularity granularity);

/// Where `ts` falls inside its period. Weeks start on Monday 00:00.
Offset fold_offset(const Timestamp& ts, Periodicity periodicity, Granularity granularity);

/// Index of the period containing `ts` (days or Monday-anchored weeks since the epoch).
std::int64_t period_index(const Timestamp& ts, Periodicity periodicity);

/// Inclusive number of periods between the earliest and latest record. An
/// override replaces the computed value. Throws DataError on empty input
/// without an override, ConfigError on a non-positive override.
std::int64_t period_count(std::span<const LogRecord> records, Periodicity periodicity,
                          std::optional<std::int64_t> n_override = std::nullopt);

/// Folds one entity's Access records. Throws DataError on mixed entities,
/// NotAccess records, or empty input without an N override.
FoldedSeries fold(std::span<const LogRecord> records, Periodicity periodicity,
                  Granularity granularity, std::optional<std::int64_t> n_override = std::nullopt);

/// Folds every entity of a cleaned partition with one shared N, computed over
/// all records when no override is given. Result is ordered by entity name.
std::vector<FoldedSeries> fold_all(const EntityPartition& partition, Periodicity periodicity,
                                   Granularity granularity,
                                   std::optional<std::int64_t> n_override = std::nullopt);

/// "14:05" for daily/minute, "14:05:30" for seconds, "Tue 14:05" for weekly.
std::string format_clock(Offset offset, Periodicity periodicity, Granularity granularity);

/// Accepts a plain integer offset or the clock forms produced by format_clock.
/// Throws std::invalid_argument.
Offset parse_offset(std::string_view text, Periodicity periodicity, Granularity granularity);

Periodicity parse_periodicity(std::string_view text);
Granularity parse_granularity(std::string_view text);
std::string_view to_string(Periodicity periodicity);
std::string_view to_string(Granularity granularity);

/// Folded table: "# periodicity=daily granularity=minute n=7" then
/// entity,timePoint,accessCount,clock rows. All series must share periodicity,
/// granularity and N.
void write_folded_csv(std::ostream& out, std::span<const FoldedSeries> series);
std::vector<FoldedSeries> read_folded_csv(std::istream& in);

}  // namespace sigfed
