#include "sigfed/harness.hpp"

#include "csv.hpp"
#include "sigfed/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace sigfed {

void GeneratorSpec::validate() const {
    if (days <= 0) throw ConfigError("generator needs a positive number of days");
    if (!first_day.ok()) throw ConfigError("generator first day is not a valid date");
    for (const auto& e : entities) {
        if (e.name.empty()) throw ConfigError("generator entity without a name");
        if (e.daily_rate < 0.0 || e.daily_rate > 1.0) throw ConfigError("rate of '" + e.name + "' not in [0,1]");
        if (e.spread < 0) throw ConfigError("spread of '" + e.name + "' is negative");
        for (Offset p : e.peaks)
            if (p < 0 || p >= 1440) throw ConfigError("peak of '" + e.name + "' outside the day");
    }
}

GeneratorSpec GeneratorSpec::web_log_preset(std::uint64_t seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.days = 90;
    constexpr double rate = 0.945;  // 90 * 5 * 4 * 0.945 ~= 1700 rows
    const auto hm = [](Offset h, Offset m) { return h * 60 + m; };
    spec.entities = {
        {"Citeseer.com", {hm(9, 0), hm(13, 5), hm(14, 5), hm(20, 30)}, 10, rate},
        {"Newsworld.com", {hm(8, 30), hm(13, 15), hm(19, 0), hm(21, 0)}, 10, rate},
        {"Sports.com", {hm(13, 10), hm(17, 45), hm(20, 40), hm(22, 15)}, 10, rate},
        {"Rgtu.net", {hm(10, 0), hm(14, 10), hm(14, 20), hm(16, 0)}, 10, rate},
        {"Election.com", {hm(8, 45), hm(12, 30), hm(19, 20), hm(21, 10)}, 10, rate},
    };
    return spec;
}

double GeneratorSpec::expected_rows() const {
    double per_day = 0;
    for (const auto& e : entities) per_day += static_cast<double>(e.peaks.size()) * e.daily_rate;
    return per_day * days;
}

std::vector<LogRecord> generate(const GeneratorSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::vector<LogRecord> out;
    const std::chrono::sys_days first{spec.first_day};
    for (int d = 0; d < spec.days; ++d) {
        for (const auto& e : spec.entities) {
            std::bernoulli_distribution hit(e.daily_rate);
            std::uniform_int_distribution<Offset> jitter(-e.spread, e.spread);
            for (Offset peak : e.peaks) {
                if (!hit(rng)) continue;
                const Offset minute = std::clamp<Offset>(peak + jitter(rng), 0, 1439);
                out.push_back({e.name, AccessStatus::Access,
                               Timestamp{first + std::chrono::days{d}, static_cast<std::int32_t>(minute * 60)}});
            }
        }
    }
    return out;
}

std::vector<FoldedSeries> fold_records(std::span<const LogRecord> records, const MiningConfig& config) {
    config.validate();
    return fold_all(clean(records), config.periodicity, config.granularity, config.n_override);
}

std::vector<SignificantInterval> discover_intervals(std::span<const FoldedSeries> dataset,
                                                    const MiningConfig& config, bool all) {
    config.validate();
    if (!config.min_conf) throw ConfigError("min-conf is required");
    if (!all && !config.max_len) throw ConfigError("max-len is required for One-Pass-SI");
    std::vector<SignificantInterval> out;
    for (const auto& series : dataset) {
        auto found = all ? one_pass_allsi(series, *config.min_conf)
                         : one_pass_si(series, *config.min_conf, *config.max_len);
        std::move(found.begin(), found.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<Episode> discover_episodes(std::span<const SignificantInterval> intervals, const MiningConfig& config) {
    config.validate();
    if (!config.window) throw ConfigError("window is required");
    const auto input = FedInput::from_intervals({intervals.begin(), intervals.end()});
    return one_pass_fed(input, *config.window, config.semantics);
}

namespace {

template <typename Fn>
SweepRow timed(double value, Fn&& run) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t count = run();
    const auto t1 = std::chrono::steady_clock::now();
    return {value, count, std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count()};
}

std::size_t count_intervals(std::span<const FoldedSeries> dataset, const Percent& min_conf,
                            std::optional<Offset> max_len) {
    std::size_t total = 0;
    for (const auto& s : dataset)
        total += max_len ? one_pass_si(s, min_conf, *max_len).size() : one_pass_allsi(s, min_conf).size();
    return total;
}

}  // namespace

SweepResult sweep_maxlen(std::span<const FoldedSeries> dataset, const Percent& min_conf,
                         std::vector<Offset> max_lens) {
    std::sort(max_lens.begin(), max_lens.end());
    SweepResult result{"maxLen", {}};
    for (Offset len : max_lens)
        result.rows.push_back(timed(static_cast<double>(len), [&] { return count_intervals(dataset, min_conf, len); }));
    return result;
}

SweepResult sweep_minconf(std::span<const FoldedSeries> dataset, Offset max_len, std::vector<Percent> min_confs) {
    std::sort(min_confs.begin(), min_confs.end());
    SweepResult result{"minConf", {}};
    for (const auto& c : min_confs)
        result.rows.push_back(timed(c.to_double(), [&] { return count_intervals(dataset, c, max_len); }));
    return result;
}

std::pair<SweepResult, SweepResult> compare_si_allsi(std::span<const FoldedSeries> dataset, Offset max_len,
                                                     std::vector<Percent> min_confs) {
    std::sort(min_confs.begin(), min_confs.end());
    SweepResult si{"minConf", {}};
    SweepResult all{"minConf", {}};
    for (const auto& c : min_confs) {
        si.rows.push_back(timed(c.to_double(), [&] { return count_intervals(dataset, c, max_len); }));
        all.rows.push_back(timed(c.to_double(), [&] { return count_intervals(dataset, c, std::nullopt); }));
    }
    return {std::move(si), std::move(all)};
}

SweepResult sweep_window(std::span<const SignificantInterval> intervals, std::vector<Offset> windows,
                         Semantics semantics) {
    std::sort(windows.begin(), windows.end());
    const auto input = FedInput::from_intervals({intervals.begin(), intervals.end()});
    SweepResult result{"window", {}};
    for (Offset w : windows)
        result.rows.push_back(timed(static_cast<double>(w), [&] { return one_pass_fed(input, w, semantics).size(); }));
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, bool with_timing) {
    out << "parameterValue,count,elapsedMicros\n";
    for (const auto& row : result.rows) {
        std::ostringstream value;
        value.precision(10);
        value << row.value;
        out << value.str() << ',' << row.count << ',' << (with_timing ? row.elapsed_micros : 0) << '\n';
    }
}

std::vector<ContributionRow> contribution_report(std::span<const TaggedEpisode> episodes) {
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    std::map<std::string, std::size_t> memberships;
    for (const auto& t : episodes) {
        for (const auto& name : t.episode.entities) ++counts[t.month][name];
        memberships[t.month] += t.episode.level();
    }
    std::vector<ContributionRow> rows;
    for (const auto& [month, per_entity] : counts)
        for (const auto& [entity, count] : per_entity)
            rows.push_back({month, entity, count,
                            100.0 * static_cast<double>(count) / static_cast<double>(memberships[month])});
    return rows;
}

std::vector<TaggedEpisode> mine_monthly(std::span<const LogRecord> records, const MiningConfig& config, bool all) {
    std::map<std::string, std::vector<LogRecord>> by_month;
    for (const auto& r : records) {
        const auto ymd = r.timestamp.date();
        char key[16];
        std::snprintf(key, sizeof key, "%04d-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()));
        by_month[key].push_back(r);
    }
    std::vector<TaggedEpisode> out;
    for (const auto& [month, recs] : by_month) {
        const auto dataset = fold_records(recs, config);
        const auto intervals = discover_intervals(dataset, config, all);
        for (auto& e : discover_episodes(intervals, config)) out.push_back({month, std::move(e)});
    }
    return out;
}

void write_contribution_csv(std::ostream& out, std::span<const ContributionRow> rows) {
    out << "month,entity,episodeCount,percent\n";
    for (const auto& r : rows) {
        char pct[32];
        std::snprintf(pct, sizeof pct, "%.2f", r.percent);
        out << r.month << ',' << csv::escape(r.entity) << ',' << r.count << ',' << pct << '\n';
    }
}

}  // namespace sigfed
