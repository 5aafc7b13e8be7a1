#include "sigfed/errors.hpp"
#include "sigfed/folding.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

using namespace sigfed;

namespace {

EntityPartition raw_partition() {
    std::ifstream in(SIGFED_TEST_DATA "/raw_log.csv");
    REQUIRE(in);
    return clean(parse_log(in));
}

constexpr Offset at(int h, int m) { return h * 60 + m; }

}  // namespace

TEST_CASE("folding the cleaned Citeseer records") {
    const auto parts = raw_partition();
    const auto s = fold(parts.at("Citeseer.com"), Periodicity::Daily, Granularity::Minute, 7);
    CHECK(s.entity == "Citeseer.com");
    CHECK(s.period_count == 7);
    const std::vector<FoldedPoint> expected{{at(14, 5), 3}, {at(14, 10), 3}, {at(14, 40), 2}};
    CHECK(s.points == expected);
}

TEST_CASE("folding the cleaned Rgtu records") {
    const auto parts = raw_partition();
    const auto s = fold(parts.at("Rgtu.net"), Periodicity::Daily, Granularity::Minute, 7);
    const std::vector<FoldedPoint> expected{{at(14, 5), 2}, {at(14, 10), 3}, {at(14, 20), 2}};
    CHECK(s.points == expected);
}

TEST_CASE("single record folds to one point") {
    const auto recs = parse_log("A,Access,4/15/2009 2:05 pm\n");
    const auto s = fold(recs, Periodicity::Daily, Granularity::Minute);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0] == FoldedPoint{845, 1});
    CHECK(s.period_count == 1);
}

TEST_CASE("fold errors") {
    const auto mixed = parse_log("A,Access,2009-04-15 14:05\nB,Access,2009-04-15 14:05\n");
    CHECK_THROWS_AS(fold(mixed, Periodicity::Daily, Granularity::Minute), DataError);
    const auto not_access = parse_log("A,NotAccess,2009-04-15 14:05\n");
    CHECK_THROWS_AS(fold(not_access, Periodicity::Daily, Granularity::Minute), DataError);
    CHECK_THROWS_AS(fold({}, Periodicity::Daily, Granularity::Minute), DataError);
    const auto empty = fold({}, Periodicity::Daily, Granularity::Minute, 7);
    CHECK(empty.points.empty());
    CHECK(empty.period_count == 7);
    CHECK_THROWS_AS(fold({}, Periodicity::Daily, Granularity::Minute, 0), ConfigError);
}

TEST_CASE("period_count") {
    // 2/15 .. 2/22 inclusive: 15,16,17,18,19,20,21,22
    const auto span = parse_log("A,Access,2/15/2009 2:05 pm\nA,Access,2/19/2009 9:00 am\nA,Access,2/22/2009 2:10 pm\n");
    CHECK(period_count(span, Periodicity::Daily) == 8);
    CHECK(period_count(span, Periodicity::Daily, 7) == 7);

    const auto one_day = parse_log("A,Access,2009-02-15 00:00\nA,Access,2009-02-15 23:59\n");
    CHECK(period_count(one_day, Periodicity::Daily) == 1);
    CHECK_THROWS_AS(period_count({}, Periodicity::Daily), DataError);

    // 2009-02-15 is a Sunday, 2009-02-16 a Monday: two Monday-anchored weeks
    const auto across = parse_log("A,Access,2009-02-15 12:00\nA,Access,2009-02-16 12:00\n");
    CHECK(period_count(across, Periodicity::Weekly) == 2);
    const auto within = parse_log("A,Access,2009-02-16 00:00\nA,Access,2009-02-22 23:59\n");
    CHECK(period_count(within, Periodicity::Weekly) == 1);
}

TEST_CASE("weekly offsets start on Monday") {
    // 2009-04-13 was a Monday
    CHECK(fold_offset(make_timestamp(2009, 4, 13, 0, 0), Periodicity::Weekly, Granularity::Minute) == 0);
    CHECK(fold_offset(make_timestamp(2009, 4, 14, 14, 5), Periodicity::Weekly, Granularity::Minute) == 1440 + 845);
    CHECK(fold_offset(make_timestamp(2009, 4, 19, 23, 59), Periodicity::Weekly, Granularity::Minute) == 10079);
    CHECK(fold_offset(make_timestamp(1969, 12, 29, 0, 1), Periodicity::Weekly, Granularity::Minute) == 1);
    CHECK(fold_offset(make_timestamp(2009, 4, 14, 14, 5, 9), Periodicity::Daily, Granularity::Second) == 845 * 60 + 9);
    CHECK(period_length(Periodicity::Daily, Granularity::Minute) == 1440);
    CHECK(period_length(Periodicity::Weekly, Granularity::Minute) == 10080);
    CHECK(period_length(Periodicity::Daily, Granularity::Second) == 86400);
}

TEST_CASE("clock formatting and parsing") {
    CHECK(format_clock(845, Periodicity::Daily, Granularity::Minute) == "14:05");
    CHECK(format_clock(60, Periodicity::Daily, Granularity::Minute) == "1:00");
    CHECK(format_clock(845 * 60 + 9, Periodicity::Daily, Granularity::Second) == "14:05:09");
    CHECK(format_clock(1440 + 845, Periodicity::Weekly, Granularity::Minute) == "Tue 14:05");
    CHECK(parse_offset("1:00", Periodicity::Daily, Granularity::Minute) == 60);
    CHECK(parse_offset("845", Periodicity::Daily, Granularity::Minute) == 845);
    CHECK(parse_offset("Tue 14:05", Periodicity::Weekly, Granularity::Minute) == 1440 + 845);
    CHECK(parse_offset("14:05:09", Periodicity::Daily, Granularity::Second) == 845 * 60 + 9);
    CHECK_THROWS(parse_offset("14:05:09", Periodicity::Daily, Granularity::Minute));
    CHECK_THROWS(parse_offset("1440", Periodicity::Daily, Granularity::Minute));
    CHECK_THROWS(parse_offset("14:05", Periodicity::Weekly, Granularity::Minute));
    for (Offset o : {Offset{0}, Offset{59}, Offset{845}, Offset{1439}})
        CHECK(parse_offset(format_clock(o, Periodicity::Daily, Granularity::Minute), Periodicity::Daily,
                           Granularity::Minute) == o);
}

TEST_CASE("fold properties on random records") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 200; ++round) {
        std::vector<LogRecord> recs;
        const int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i)
            recs.push_back({"A", AccessStatus::Access,
                            make_timestamp(2009, 4, 1 + static_cast<unsigned>(rng() % 20), static_cast<int>(rng() % 3),
                                           static_cast<int>(rng() % 60))});
        for (auto p : {Periodicity::Daily, Periodicity::Weekly}) {
            const auto s = fold(recs, p, Granularity::Minute);
            s.validate();
            CHECK(s.total_access_count() == n);
            for (const auto& pt : s.points) CHECK(pt.access_count <= n);

            auto shuffled = recs;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const auto t = fold(shuffled, p, Granularity::Minute);
            CHECK(t.points == s.points);
            CHECK(t.period_count == s.period_count);
        }
    }
}

TEST_CASE("folded table round trip") {
    const auto series = fold_all(raw_partition(), Periodicity::Daily, Granularity::Minute, 7);
    std::ostringstream out;
    write_folded_csv(out, series);
    CHECK(out.str().rfind("# periodicity=daily granularity=minute n=7\n", 0) == 0);
    std::istringstream in(out.str());
    const auto back = read_folded_csv(in);
    REQUIRE(back.size() == series.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].entity == series[i].entity);
        CHECK(back[i].points == series[i].points);
        CHECK(back[i].period_count == 7);
    }
}

TEST_CASE("folded table rejects bad rows") {
    std::istringstream no_n("entity,timePoint,accessCount\nA,845,3\n");
    CHECK_THROWS_AS(read_folded_csv(no_n), DataError);
    std::istringstream dup("# n=7\nentity,timePoint,accessCount\nA,845,3\nA,14:05,1\n");
    CHECK_THROWS_AS(read_folded_csv(dup), DataError);
    std::istringstream zero("# n=7\nentity,timePoint,accessCount\nA,845,0\n");
    CHECK_THROWS_AS(read_folded_csv(zero), ParseError);
}

TEST_CASE("fold_all shares N across entities") {
    const auto series = fold_all(raw_partition(), Periodicity::Daily, Granularity::Minute);
    REQUIRE(series.size() == 2);
    // raw records span 4/15 .. 4/22
    CHECK(series[0].period_count == 8);
    CHECK(series[1].period_count == 8);
}
