#include "sigfed/fed.hpp"

#include "csv.hpp"
#include "sigfed/errors.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace sigfed {

FedInput FedInput::from_intervals(std::vector<SignificantInterval> intervals) {
    std::stable_sort(intervals.begin(), intervals.end(),
                     [](const SignificantInterval& a, const SignificantInterval& b) { return a.start < b.start; });
    std::set<std::string> names;
    for (const auto& si : intervals) names.insert(si.entity);
    return FedInput{std::move(intervals), names.size()};
}

void FedInput::validate() const {
    for (std::size_t i = 1; i < intervals.size(); ++i)
        if (intervals[i].start < intervals[i - 1].start)
            throw DataError("FED input must be sorted by start point (row " + std::to_string(i + 1) + ")");
    std::set<std::string> names;
    for (const auto& si : intervals) names.insert(si.entity);
    if (names.size() != distinct_entities)
        throw DataError("FED input distinct entity count is " + std::to_string(distinct_entities) + ", expected " +
                        std::to_string(names.size()));
}

Percent pattern_confidence(std::span<const Percent> confidences) {
    if (confidences.empty()) throw std::invalid_argument("pattern confidence of an empty episode");
    return *std::min_element(confidences.begin(), confidences.end());
}

std::vector<Episode> one_pass_fed(const FedInput& input, Offset window, Semantics semantics) {
    if (window < 0) throw ConfigError("window must be non-negative");
    input.validate();

    const auto& iv = input.intervals;
    const std::size_t n = input.distinct_entities;
    std::vector<std::vector<Episode>> by_level(n + 1);

    for (std::size_t base = 0; base < iv.size() && n >= 2; ++base) {
        const auto& b = iv[base];
        Episode chain{{b.entity}, b.start, b.end, b.confidence};
        for (std::size_t j = base + 1; j < iv.size(); ++j) {
            const auto& s = iv[j];
            if (s.start - b.start > window) break;
            if (std::find(chain.entities.begin(), chain.entities.end(), s.entity) != chain.entities.end()) continue;
            if (semantics == Semantics::E && s.end - b.start > window) break;
            chain.entities.push_back(s.entity);
            chain.end = std::max(chain.end, s.end);
            chain.confidence = std::min(chain.confidence, s.confidence);
            by_level[chain.level()].push_back(chain);
            if (chain.level() == n) break;
        }
    }

    std::vector<Episode> out;
    for (std::size_t level = 2; level <= n; ++level)
        for (auto& e : by_level[level]) out.push_back(std::move(e));
    return out;
}

void write_episodes_csv(std::ostream& out, std::span<const Episode> episodes, std::size_t level,
                        Periodicity periodicity, Granularity granularity) {
    for (std::size_t k = 1; k <= level; ++k) out << "entity" << k << ',';
    out << "startPoint,endPoint,patternConfidence,startClock,endClock\n";
    for (const auto& e : episodes) {
        if (e.level() != level) continue;
        for (const auto& name : e.entities) out << csv::escape(name) << ',';
        out << e.start << ',' << e.end << ',' << e.confidence.format(2) << ','
            << format_clock(e.start, periodicity, granularity) << ',' << format_clock(e.end, periodicity, granularity)
            << '\n';
    }
}

}  // namespace sigfed
