#include "sigfed/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sigfed::oracle {

std::vector<SignificantInterval> brute_force_si(const FoldedSeries& series, const Percent& min_conf,
                                                std::optional<Offset> max_len) {
    const auto& pts = series.points;
    const std::int64_t num = min_conf.value().numerator();
    const std::int64_t den = min_conf.value().denominator();

    std::vector<SignificantInterval> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i; j < pts.size(); ++j) {
            std::int64_t ac = 0;
            for (std::size_t k = i; k <= j; ++k) ac += pts[k].access_count;
            // 100 * ac / N >= num / den
            if (100 * ac * den < num * series.period_count) continue;
            if (max_len && pts[j].time_point - pts[i].time_point > *max_len) continue;
            SignificantInterval si;
            si.entity = series.entity;
            si.start = pts[i].time_point;
            si.end = pts[j].time_point;
            si.access_count = ac;
            si.point_count = static_cast<std::int64_t>(j - i + 1);
            si.density = Percent::Rep(ac, si.end - si.start + 1);
            si.confidence = Percent(Percent::Rep(100 * ac, series.period_count));
            kept.push_back(si);
        }
    }

    std::vector<SignificantInterval> minimal;
    for (const auto& w : kept) {
        bool embeds = false;
        for (const auto& v : kept) {
            if (&v == &w) continue;
            if (v.start >= w.start && v.end <= w.end && (v.start != w.start || v.end != w.end)) {
                embeds = true;
                break;
            }
        }
        if (!embeds) minimal.push_back(w);
    }
    std::sort(minimal.begin(), minimal.end(), [](const auto& a, const auto& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    });
    return minimal;
}

namespace {

bool admissible(const SignificantInterval& base, const SignificantInterval& s, Offset window, Semantics semantics) {
    if (s.start - base.start > window || s.start < base.start) return false;
    return semantics == Semantics::S || s.end - base.start <= window;
}

// Tries to realise `e` with members chosen from the input: base first, then
// one interval per remaining entity at strictly increasing input positions.
bool realisable(const FedInput& input, Offset window, Semantics semantics, const Episode& e) {
    const auto& iv = input.intervals;
    for (std::size_t b = 0; b < iv.size(); ++b) {
        const auto& base = iv[b];
        if (base.entity != e.entities[0] || base.start != e.start) continue;
        std::function<bool(std::size_t, std::size_t, Offset, Percent)> extend =
            [&](std::size_t k, std::size_t after, Offset end, Percent pc) -> bool {
            if (k == e.entities.size()) return end == e.end && pc == e.confidence;
            for (std::size_t j = after + 1; j < iv.size(); ++j) {
                const auto& s = iv[j];
                if (s.entity != e.entities[k] || !admissible(base, s, window, semantics)) continue;
                if (extend(k + 1, j, std::max(end, s.end), std::min(pc, s.confidence))) return true;
            }
            return false;
        };
        if (extend(1, b, base.end, base.confidence)) return true;
    }
    return false;
}

}  // namespace

bool check_episode_set(const FedInput& input, Offset window, Semantics semantics,
                       std::span<const Episode> episodes) {
    std::set<std::string> names;
    for (const auto& si : input.intervals) names.insert(si.entity);
    const std::size_t n = names.size();

    for (const auto& e : episodes) {
        if (e.level() < 2 || e.level() > n) return false;
        if (std::set<std::string>(e.entities.begin(), e.entities.end()).size() != e.level()) return false;
        if (e.start > e.end) return false;
        if (!realisable(input, window, semantics, e)) return false;
    }
    return true;
}

}  // namespace sigfed::oracle
