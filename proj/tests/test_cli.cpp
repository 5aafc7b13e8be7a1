#include "cli.hpp"
#include "sigfed/errors.hpp"
#include "sigfed/folding.hpp"
#include "sigfed/sid.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace sigfed;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kRaw = SIGFED_TEST_DATA "/raw_log.csv";
const std::string kSeed = SIGFED_TEST_DATA "/seed_intervals.csv";

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("sigfed_cli_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

json manifest(const TempDir& dir, const std::string& command) { return json::parse(slurp(dir / (command + ".manifest.json"))); }

}  // namespace

TEST_CASE("clean writes one file per entity") {
    TempDir d;
    const auto r = invoke({"clean", kRaw, "-o", d / "c"});
    REQUIRE(r.code == cli::kOk);
    CHECK(data_lines(slurp(d / "c/Citeseer.com.csv")).size() == 1 + 8);
    CHECK(data_lines(slurp(d / "c/Rgtu.net.csv")).size() == 1 + 7);
    const auto m = json::parse(slurp(d / "c/clean.manifest.json"));
    CHECK(m["command"] == "clean");
    CHECK(m["outputs"].size() == 2);
    CHECK(m["inputs"][0] == kRaw);
}

TEST_CASE("clean on empty and malformed input") {
    TempDir d;
    spit(d / "empty.csv", "");
    REQUIRE(invoke({"clean", d / "empty.csv", "-o", d / "e"}).code == cli::kOk);
    std::size_t csvs = 0;
    for (const auto& entry : fs::directory_iterator(d.path / "e")) csvs += entry.path().extension() == ".csv";
    CHECK(csvs == 0);

    spit(d / "bad.csv", "Citeseer.com,Access,4/15/2009 2:05 pm\nX,Access,25:99\n");
    const auto r = invoke({"clean", d / "bad.csv", "-o", d / "b"});
    CHECK(r.code == cli::kData);
    CHECK(r.err.find("line 2") != std::string::npos);

    CHECK(invoke({"clean", d / "missing.csv", "-o", d / "m"}).code == cli::kData);
}

TEST_CASE("fold reproduces the folded tables") {
    TempDir d;
    REQUIRE(invoke({"fold", kRaw, "-o", d.path.string(), "--n", "7"}).code == cli::kOk);
    std::istringstream in(slurp(d / "folded.csv"));
    const auto dataset = read_folded_csv(in);
    REQUIRE(dataset.size() == 2);
    CHECK(dataset[0].entity == "Citeseer.com");
    CHECK(dataset[0].points == std::vector<FoldedPoint>{{845, 3}, {850, 3}, {880, 2}});
    CHECK(dataset[0].period_count == 7);
    CHECK(dataset[1].points == std::vector<FoldedPoint>{{845, 2}, {850, 3}, {860, 2}});
    CHECK(manifest(d, "fold")["config"]["n"] == 7);
}

TEST_CASE("fold without N on an input with no accesses") {
    TempDir d;
    spit(d / "none.csv", "A,NotAccess,4/15/2009 2:05 pm\n");
    CHECK(invoke({"fold", d / "none.csv", "-o", d / "x"}).code == cli::kData);
    REQUIRE(invoke({"fold", d / "none.csv", "-o", d / "y", "--n", "3"}).code == cli::kOk);
    CHECK(data_lines(slurp(d / "y/folded.csv")).size() == 1);
}

TEST_CASE("si and allsi over the folded table") {
    TempDir d;
    REQUIRE(invoke({"fold", kRaw, "-o", d.path.string(), "--n", "7"}).code == cli::kOk);
    REQUIRE(invoke({"si", d / "folded.csv", "-o", d.path.string(), "--min-conf", "60", "--max-len", "20"}).code ==
            cli::kOk);
    REQUIRE(invoke({"allsi", d / "folded.csv", "-o", d.path.string(), "--min-conf", "60"}).code == cli::kOk);

    const auto si = data_lines(slurp(d / "si_intervals.csv"));
    REQUIRE(si.size() == 4);
    CHECK(si[0] == "entity,startPoint,endPoint,accessCount,span,density,confidence,pointCount,startClock,endClock");
    CHECK(si[1] == "Citeseer.com,845,850,6,5,1.0000,85.71,2,14:05,14:10");
    CHECK(si[2] == "Rgtu.net,845,850,5,5,0.8333,71.43,2,14:05,14:10");
    CHECK(si[3] == "Rgtu.net,850,860,5,10,0.4545,71.43,2,14:10,14:20");

    const auto all = data_lines(slurp(d / "allsi_intervals.csv"));
    REQUIRE(all.size() == 5);
    CHECK(all[2] == "Citeseer.com,850,880,5,30,0.1613,71.43,2,14:10,14:40");
}

TEST_CASE("usage errors exit with 1") {
    TempDir d;
    REQUIRE(invoke({"fold", kRaw, "-o", d.path.string(), "--n", "7"}).code == cli::kOk);
    const auto folded = d / "folded.csv";
    CHECK(invoke({"si", folded, "-o", d.path.string(), "--min-conf", "101", "--max-len", "20"}).code == cli::kUsage);
    CHECK(invoke({"si", folded, "-o", d.path.string(), "--min-conf", "0", "--max-len", "20"}).code == cli::kUsage);
    CHECK(invoke({"si", folded, "-o", d.path.string(), "--min-conf", "60.123", "--max-len", "20"}).code ==
          cli::kUsage);
    CHECK(invoke({"si", folded, "-o", d.path.string(), "--min-conf", "60"}).code == cli::kUsage);
    CHECK(invoke({"si", folded, "-o", d.path.string(), "--min-conf", "60", "--max-len", "-1"}).code == cli::kUsage);
    CHECK(invoke({"fed", kSeed, "-o", d.path.string(), "--window", "30", "--semantics", "x"}).code == cli::kUsage);
    CHECK(invoke({"bogus"}).code == cli::kUsage);
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"--version"}).code == cli::kOk);
}

TEST_CASE("fed over the seed intervals") {
    TempDir d;
    REQUIRE(invoke({"fed", kSeed, "-o", d.path.string(), "--window", "30"}).code == cli::kOk);
    const auto l2 = data_lines(slurp(d / "episodes_level2.csv"));
    REQUIRE(l2.size() == 4);
    CHECK(l2[0] == "entity1,entity2,startPoint,endPoint,patternConfidence,startClock,endClock");
    CHECK(l2[1] == "Citeseer.com,Rgtu.net,60,80,70.00,1:00,1:20");
    CHECK(l2[2] == "Newsworld.com,Citeseer.com,120,130,75.00,2:00,2:10");
    CHECK(l2[3] == "Citeseer.com,Rgtu.net,120,135,70.00,2:00,2:15");
    const auto l3 = data_lines(slurp(d / "episodes_level3.csv"));
    REQUIRE(l3.size() == 2);
    CHECK(l3[1] == "Newsworld.com,Citeseer.com,Rgtu.net,120,135,70.00,2:00,2:15");
    CHECK(manifest(d, "fed")["notes"].empty());
}

TEST_CASE("fed under the end-inclusive rule is noted") {
    TempDir d;
    REQUIRE(invoke({"fed", kSeed, "-o", d.path.string(), "--window", "30", "--semantics", "e"}).code == cli::kOk);
    const auto m = manifest(d, "fed");
    CHECK(m["config"]["semantics"] == "e");
    CHECK_FALSE(m["notes"].empty());
}

TEST_CASE("fed on a single interval writes an empty level 2") {
    TempDir d;
    spit(d / "one.csv", "entity,startPoint,endPoint,confidence\nA,10,20,90\n");
    REQUIRE(invoke({"fed", d / "one.csv", "-o", d.path.string(), "--window", "30"}).code == cli::kOk);
    CHECK(data_lines(slurp(d / "episodes_level2.csv")).size() == 1);
    CHECK_FALSE(fs::exists(d / "episodes_level3.csv"));
}

TEST_CASE("gen is reproducible") {
    TempDir d;
    REQUIRE(invoke({"gen", "--seed", "9", "-o", d / "a"}).code == cli::kOk);
    REQUIRE(invoke({"gen", "--seed", "9", "-o", d / "b"}).code == cli::kOk);
    REQUIRE(invoke({"gen", "--seed", "10", "-o", d / "c"}).code == cli::kOk);
    CHECK(slurp(d / "a/log.csv") == slurp(d / "b/log.csv"));
    CHECK(slurp(d / "a/log.csv") != slurp(d / "c/log.csv"));
    CHECK(json::parse(slurp(d / "a/gen.manifest.json"))["config"]["seed"] == 9);
    CHECK(invoke({"gen", "-o", d / "z"}).code == cli::kUsage);
}

TEST_CASE("gen from a spec file") {
    TempDir d;
    spit(d / "spec.json", R"({"days": 3, "entities": [{"name": "A", "peaks": ["14:05"], "rate": 1.0}]})");
    REQUIRE(invoke({"gen", "--seed", "1", "--spec", d / "spec.json", "-o", d.path.string()}).code == cli::kOk);
    CHECK(data_lines(slurp(d / "log.csv")).size() == 1 + 3);
    spit(d / "broken.json", "{");
    CHECK(invoke({"gen", "--seed", "1", "--spec", d / "broken.json", "-o", d.path.string()}).code == cli::kUsage);
}

TEST_CASE("sweep rows come out sorted") {
    TempDir d;
    REQUIRE(invoke({"gen", "--seed", "3", "--days", "14", "-o", d.path.string()}).code == cli::kOk);
    REQUIRE(invoke({"sweep", d / "log.csv", "-o", d.path.string(), "--param", "maxlen", "--values", "30,0,10",
                    "--min-conf", "40", "--no-timing"})
                .code == cli::kOk);
    const auto rows = data_lines(slurp(d / "sweep_maxlen.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(rows[2].rfind("10,", 0) == 0);
    CHECK(rows[3].rfind("30,", 0) == 0);
    CHECK(rows[1].substr(rows[1].size() - 2) == ",0");

    REQUIRE(invoke({"sweep", d / "log.csv", "-o", d.path.string(), "--param", "compare", "--values", "40,60",
                    "--max-len", "20"})
                .code == cli::kOk);
    CHECK(fs::exists(d / "sweep_si.csv"));
    CHECK(fs::exists(d / "sweep_allsi.csv"));
    CHECK(invoke({"sweep", d / "log.csv", "-o", d.path.string(), "--param", "nope", "--values", "1"}).code ==
          cli::kUsage);
}

TEST_CASE("contrib on a log without accesses") {
    TempDir d;
    spit(d / "none.csv", "A,NotAccess,4/15/2009 2:05 pm\n");
    REQUIRE(invoke({"contrib", d / "none.csv", "-o", d.path.string(), "--min-conf", "50", "--max-len", "10",
                    "--window", "10"})
                .code == cli::kOk);
    CHECK(slurp(d / "contribution.csv") == "month,entity,episodeCount,percent\n");
}

TEST_CASE("config file supplies values, flags win") {
    TempDir d;
    spit(d / "cfg.json", R"({"min_conf": 90, "max-len": 20, "n": 7})");
    REQUIRE(invoke({"fold", kRaw, "-o", d.path.string(), "--config", d / "cfg.json"}).code == cli::kOk);
    REQUIRE(invoke({"si", d / "folded.csv", "-o", d.path.string(), "--config", d / "cfg.json"}).code == cli::kOk);
    // only Rgtu's 14:05-14:20 (7 of 7) clears 90
    const auto strict = data_lines(slurp(d / "si_intervals.csv"));
    REQUIRE(strict.size() == 2);
    CHECK(strict[1].rfind("Rgtu.net,845,860,", 0) == 0);
    REQUIRE(invoke({"si", d / "folded.csv", "-o", d.path.string(), "--config", d / "cfg.json", "--min-conf", "60"})
                .code == cli::kOk);
    CHECK(data_lines(slurp(d / "si_intervals.csv")).size() == 4);
    CHECK(manifest(d, "si")["config"]["min-conf"] == "60.00");

    spit(d / "unknown.json", R"({"mystery": 1})");
    CHECK(invoke({"fold", kRaw, "-o", d.path.string(), "--config", d / "unknown.json"}).code == cli::kUsage);
}

TEST_CASE("config snapshot round trip") {
    MiningConfig c;
    c.periodicity = Periodicity::Weekly;
    c.granularity = Granularity::Second;
    c.min_conf = Percent::parse("62.5");
    c.max_len = 20;
    c.window = 30;
    c.n_override = 12;
    c.semantics = Semantics::E;
    CHECK(cli::config_from_json(cli::config_to_json(c)) == c);
    CHECK(cli::config_from_json(cli::config_to_json(MiningConfig{})) == MiningConfig{});
    CHECK_THROWS_AS(cli::parse_min_conf("12.345"), ConfigError);
}

TEST_CASE("run produces the whole pipeline") {
    TempDir d;
    REQUIRE(invoke({"run", kRaw, "-o", d.path.string(), "--n", "7", "--min-conf", "60", "--max-len", "20", "--window",
                    "30"})
                .code == cli::kOk);
    for (const char* f : {"clean/Citeseer.com.csv", "clean/Rgtu.net.csv", "folded.csv", "allsi_intervals.csv",
                          "si_intervals.csv", "episodes_level2.csv", "run.manifest.json"})
        CHECK(fs::exists(d / f));
    for (const auto& entry : fs::recursive_directory_iterator(d.path))
        CHECK(entry.path().extension() != ".tmp");
    CHECK(manifest(d, "run")["outputs"].size() == 6);
}
