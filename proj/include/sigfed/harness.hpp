#pragma once

#include "sigfed/config.hpp"
#include "sigfed/fed.hpp"
#include "sigfed/folding.hpp"
#include "sigfed/ingest.hpp"
#include "sigfed/sid.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sigfed {

// ---------------------------------------------------------------------------
// Synthetic logs
// ---------------------------------------------------------------------------

struct EntityProfile {
    std::string name;
    std::vector<Offset> peaks;  // minutes since midnight
    Offset spread = 0;          // minutes either side of a peak
    double daily_rate = 1.0;    // probability of one access per peak per day
};

struct GeneratorSpec {
    std::uint64_t seed = 0;
    int days = 1;
    std::chrono::year_month_day first_day{std::chrono::year{2009}, std::chrono::April, std::chrono::day{1}};
    std::vector<EntityProfile> entities;

    /// Throws ConfigError.
    void validate() const;

    /// 90 days from 2009-04-01, five sites, four peaks each, about 1700 rows.
    static GeneratorSpec web_log_preset(std::uint64_t seed);

    /// Expected row count: days * sum(peaks * rate).
    double expected_rows() const;
};

/// Deterministic for a given spec. For each day, entity and peak, emits one
/// Access record with probability daily_rate at peak + uniform[-spread, spread]
/// (clamped to the day). Records are ordered by day, then entity, then peak.
std::vector<LogRecord> generate(const GeneratorSpec& spec);

// ---------------------------------------------------------------------------
// Mining pipeline
// ---------------------------------------------------------------------------

/// clean + fold_all.
std::vector<FoldedSeries> fold_records(std::span<const LogRecord> records, const MiningConfig& config);

/// Runs one_pass_si (or one_pass_allsi when `all` is set) over every series.
/// Needs config.min_conf, and config.max_len unless `all`.
std::vector<SignificantInterval> discover_intervals(std::span<const FoldedSeries> dataset,
                                                    const MiningConfig& config, bool all);

/// discover_intervals followed by one_pass_fed. Needs config.window.
std::vector<Episode> discover_episodes(std::span<const SignificantInterval> intervals,
                                       const MiningConfig& config);

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
    double value = 0;
    std::size_t count = 0;
    std::int64_t elapsed_micros = 0;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;  // ascending by value
};

SweepResult sweep_maxlen(std::span<const FoldedSeries> dataset, const Percent& min_conf,
                         std::vector<Offset> max_lens);
SweepResult sweep_minconf(std::span<const FoldedSeries> dataset, Offset max_len,
                          std::vector<Percent> min_confs);
/// First: One-Pass-SI at max_len, second: One-Pass-AllSI, same min_conf grid.
std::pair<SweepResult, SweepResult> compare_si_allsi(std::span<const FoldedSeries> dataset, Offset max_len,
                                                     std::vector<Percent> min_confs);
/// Episode count (all levels) per window.
SweepResult sweep_window(std::span<const SignificantInterval> intervals, std::vector<Offset> windows,
                         Semantics semantics);

/// parameterValue,count,elapsedMicros. With `with_timing` false the timing
/// column is written as 0 so outputs can be compared byte for byte.
void write_sweep_csv(std::ostream& out, const SweepResult& result, bool with_timing = true);

// ---------------------------------------------------------------------------
// Per-month contribution
// ---------------------------------------------------------------------------

struct TaggedEpisode {
    std::string month;  // "YYYY-MM"
    Episode episode;
};

struct ContributionRow {
    std::string month;
    std::string entity;
    std::size_t count = 0;  // episodes containing the entity
    double percent = 0;     // count / all memberships of the month * 100
};

/// Rows ordered by month, then entity.
std::vector<ContributionRow> contribution_report(std::span<const TaggedEpisode> episodes);

/// Splits records by calendar month and runs fold -> SI (or AllSI) -> FED on
/// each month separately, tagging the episodes with their month.
std::vector<TaggedEpisode> mine_monthly(std::span<const LogRecord> records, const MiningConfig& config,
                                        bool all);

void write_contribution_csv(std::ostream& out, std::span<const ContributionRow> rows);

}  // namespace sigfed
