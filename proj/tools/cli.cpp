#include "cli.hpp"

#include "sigfed/errors.hpp"
#include "sigfed/fed.hpp"
#include "sigfed/folding.hpp"
#include "sigfed/harness.hpp"
#include "sigfed/ingest.hpp"
#include "sigfed/sid.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#ifndef SIGFED_VERSION
#define SIGFED_VERSION "dev"
#endif

namespace sigfed::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw flag text; empty means "not given on the command line".
struct Flags {
    std::string config_path;
    std::string input;
    std::string out_dir;
    std::string periodicity, granularity, min_conf, max_len, window, semantics, n, seed;
    std::string days, spec_path, param, values;
    bool allsi = false;
    bool no_timing = false;
};

std::int64_t parse_int(const std::string& flag, const std::string& text) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw ConfigError(flag + " expects an integer, got '" + text + "'");
    return v;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string normalise_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write '" + tmp.string() + "'");
        f << content;
        if (!f.flush()) throw IoError("cannot write '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string safe_file_name(const std::string& entity) {
    std::string out;
    for (char c : entity) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                        c == '-' || c == '_';
        out += ok ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw ConfigError("--values needs a comma-separated list");
    return out;
}

// Flags override the config file, which overrides built-in defaults.
struct Settings {
    MiningConfig config;
    std::optional<std::uint64_t> seed;
};

Settings resolve(const Flags& f) {
    std::map<std::string, std::string> values;
    if (!f.config_path.empty()) {
        json j;
        try {
            j = json::parse(read_file(f.config_path));
        } catch (const json::exception& e) {
            throw ConfigError("config file '" + f.config_path + "': " + e.what());
        }
        if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
        for (const auto& [key, v] : j.items()) {
            if (!v.is_null()) values[normalise_key(key)] = scalar_text(v);
        }
    }
    const std::pair<const char*, const std::string*> overrides[] = {
        {"periodicity", &f.periodicity}, {"granularity", &f.granularity}, {"min-conf", &f.min_conf},
        {"max-len", &f.max_len},         {"window", &f.window},           {"semantics", &f.semantics},
        {"n", &f.n},                     {"seed", &f.seed}};
    for (const auto& [key, text] : overrides)
        if (!text->empty()) values[key] = *text;

    static const std::set<std::string> known{"periodicity", "granularity", "min-conf", "max-len",
                                             "window",      "semantics",   "n",        "seed"};
    for (const auto& [key, _] : values)
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    Settings s;
    auto& c = s.config;
    try {
        if (values.count("periodicity")) c.periodicity = parse_periodicity(values["periodicity"]);
        if (values.count("granularity")) c.granularity = parse_granularity(values["granularity"]);
        if (values.count("semantics")) c.semantics = parse_semantics(values["semantics"]);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (values.count("min-conf")) c.min_conf = parse_min_conf(values["min-conf"]);
    if (values.count("max-len")) c.max_len = parse_int("--max-len", values["max-len"]);
    if (values.count("window")) c.window = parse_int("--window", values["window"]);
    if (values.count("n")) c.n_override = parse_int("--n", values["n"]);
    if (values.count("seed")) {
        const auto seed = parse_int("--seed", values["seed"]);
        if (seed < 0) throw ConfigError("--seed must be non-negative");
        s.seed = static_cast<std::uint64_t>(seed);
    }
    c.validate();
    return s;
}

class Command {
public:
    Command(std::string name, const Flags& flags, Settings settings)
        : name_(std::move(name)), flags_(flags), settings_(std::move(settings)), started_(utc_now()) {
        if (flags_.out_dir.empty()) throw ConfigError("--out is required");
        out_ = flags_.out_dir;
    }

    const MiningConfig& config() const { return settings_.config; }
    const Settings& settings() const { return settings_; }
    const fs::path& out() const { return out_; }

    void emit(const fs::path& relative, const std::string& content) {
        write_atomic(out_ / relative, content);
        outputs_.push_back(relative.generic_string());
    }
    void note(std::string text) { notes_.push_back(std::move(text)); }

    void finish() {
        if (config().semantics == Semantics::E)
            note("semantics=e is an interpreted rule: joiners must start and end within the window of the base "
                 "start; the chain stops at the first joiner that ends later");
        json manifest;
        manifest["command"] = name_;
        manifest["inputs"] = flags_.input.empty() ? json::array() : json::array({flags_.input});
        manifest["output_dir"] = flags_.out_dir;
        manifest["outputs"] = outputs_;
        manifest["config"] = config_to_json(config());
        if (settings_.seed) manifest["config"]["seed"] = *settings_.seed;
        manifest["tool_version"] = SIGFED_VERSION;
        manifest["started"] = started_;
        manifest["finished"] = utc_now();
        manifest["notes"] = notes_;
        write_atomic(out_ / (name_ + ".manifest.json"), manifest.dump(2) + "\n");
    }

private:
    std::string name_;
    const Flags& flags_;
    Settings settings_;
    fs::path out_;
    std::string started_;
    std::vector<std::string> outputs_;
    std::vector<std::string> notes_;
};

std::vector<LogRecord> load_log(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_log(in);
}

void require(bool present, const char* flag) {
    if (!present) throw ConfigError(std::string(flag) + " is required");
}

template <typename Writer>
std::string render(Writer&& w) {
    std::ostringstream ss;
    w(ss);
    return ss.str();
}

void write_episode_levels(Command& cmd, const std::vector<Episode>& episodes, std::size_t distinct,
                          const std::string& prefix) {
    const std::size_t top = std::max<std::size_t>(2, distinct);
    for (std::size_t level = 2; level <= top; ++level)
        cmd.emit(prefix + "episodes_level" + std::to_string(level) + ".csv", render([&](std::ostream& o) {
                     write_episodes_csv(o, episodes, level, cmd.config().periodicity, cmd.config().granularity);
                 }));
}

void cmd_clean(Command& cmd, const Flags& f) {
    const auto partition = clean(load_log(f.input));
    for (const auto& [entity, recs] : partition)
        cmd.emit(safe_file_name(entity) + ".csv", render([&](std::ostream& o) { write_log(o, recs); }));
}

void cmd_fold(Command& cmd, const Flags& f) {
    const auto records = load_log(f.input);
    auto dataset = fold_records(records, cmd.config());
    if (dataset.empty()) {
        // Nothing accessed: still a valid (empty) table when N is known.
        if (!cmd.config().n_override) throw DataError("input has no Access records; --n is required");
    }
    cmd.emit("folded.csv", render([&](std::ostream& o) { write_folded_csv(o, dataset); }));
}

std::vector<FoldedSeries> load_folded(const std::string& path) {
    std::istringstream in(read_file(path));
    return read_folded_csv(in);
}

void cmd_sid(Command& cmd, const Flags& f, bool all) {
    require(cmd.config().min_conf.has_value(), "--min-conf");
    if (!all) require(cmd.config().max_len.has_value(), "--max-len");
    auto dataset = load_folded(f.input);
    const auto intervals = discover_intervals(dataset, cmd.config(), all);
    const Periodicity p = dataset.empty() ? cmd.config().periodicity : dataset.front().periodicity;
    const Granularity g = dataset.empty() ? cmd.config().granularity : dataset.front().granularity;
    cmd.emit(all ? "allsi_intervals.csv" : "si_intervals.csv",
             render([&](std::ostream& o) { write_intervals_csv(o, intervals, p, g); }));
}

void cmd_fed(Command& cmd, const Flags& f) {
    require(cmd.config().window.has_value(), "--window");
    std::istringstream in(read_file(f.input));
    auto table = read_intervals_csv(in);
    auto config = cmd.config();
    config.periodicity = table.periodicity;
    config.granularity = table.granularity;
    const auto input = FedInput::from_intervals(std::move(table.intervals));
    const auto episodes = one_pass_fed(input, *config.window, config.semantics);
    const std::size_t top = std::max<std::size_t>(2, input.distinct_entities);
    for (std::size_t level = 2; level <= top; ++level)
        cmd.emit("episodes_level" + std::to_string(level) + ".csv", render([&](std::ostream& o) {
                     write_episodes_csv(o, episodes, level, config.periodicity, config.granularity);
                 }));
}

void cmd_sweep(Command& cmd, const Flags& f) {
    const auto& c = cmd.config();
    require(!f.param.empty(), "--param");
    const auto items = split_list(f.values);
    const auto records = load_log(f.input);
    const auto dataset = fold_records(records, c);
    const bool timing = !f.no_timing;
    const auto emit = [&](const std::string& file, const SweepResult& r) {
        cmd.emit(file, render([&](std::ostream& o) { write_sweep_csv(o, r, timing); }));
    };
    const auto percents = [&] {
        std::vector<Percent> v;
        for (const auto& s : items) v.push_back(parse_min_conf(s));
        return v;
    };
    const auto offsets = [&](const char* flag) {
        std::vector<Offset> v;
        for (const auto& s : items) {
            v.push_back(parse_int(flag, s));
            if (v.back() < 0) throw ConfigError(std::string(flag) + " values must be non-negative");
        }
        return v;
    };

    if (f.param == "maxlen") {
        require(c.min_conf.has_value(), "--min-conf");
        emit("sweep_maxlen.csv", sweep_maxlen(dataset, *c.min_conf, offsets("--values")));
    } else if (f.param == "minconf") {
        require(c.max_len.has_value(), "--max-len");
        emit("sweep_minconf.csv", sweep_minconf(dataset, *c.max_len, percents()));
    } else if (f.param == "compare") {
        require(c.max_len.has_value(), "--max-len");
        const auto [si, all] = compare_si_allsi(dataset, *c.max_len, percents());
        emit("sweep_si.csv", si);
        emit("sweep_allsi.csv", all);
    } else if (f.param == "window") {
        require(c.min_conf.has_value(), "--min-conf");
        if (!f.allsi) require(c.max_len.has_value(), "--max-len");
        const auto intervals = discover_intervals(dataset, c, f.allsi);
        emit("sweep_window.csv", sweep_window(intervals, offsets("--values"), c.semantics));
    } else {
        throw ConfigError("--param must be one of maxlen, minconf, compare, window");
    }
    if (!timing) cmd.note("timing column zeroed (--no-timing)");
}

void cmd_contrib(Command& cmd, const Flags& f) {
    const auto& c = cmd.config();
    require(c.min_conf.has_value(), "--min-conf");
    require(c.window.has_value(), "--window");
    if (!f.allsi) require(c.max_len.has_value(), "--max-len");
    const auto tagged = mine_monthly(load_log(f.input), c, f.allsi);
    const auto rows = contribution_report(tagged);
    cmd.emit("contribution.csv", render([&](std::ostream& o) { write_contribution_csv(o, rows); }));
}

GeneratorSpec load_generator_spec(const std::string& path, std::uint64_t seed) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("generator spec '" + path + "': " + e.what());
    }
    GeneratorSpec spec;
    spec.seed = seed;
    try {
        spec.days = j.value("days", 1);
        if (j.contains("first_day")) {
            const auto ts = parse_timestamp(j["first_day"].get<std::string>() + " 00:00", TimestampFormat::Iso);
            spec.first_day = ts.date();
        }
        for (const auto& e : j.at("entities")) {
            EntityProfile p;
            p.name = e.at("name").get<std::string>();
            for (const auto& peak : e.at("peaks"))
                p.peaks.push_back(peak.is_string()
                                      ? parse_offset(peak.get<std::string>(), Periodicity::Daily, Granularity::Minute)
                                      : peak.get<Offset>());
            p.spread = e.value("spread", Offset{0});
            p.daily_rate = e.value("rate", 1.0);
            spec.entities.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw ConfigError("generator spec '" + path + "': " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("generator spec '" + path + "': " + e.what());
    }
    return spec;
}

void cmd_gen(Command& cmd, const Flags& f) {
    require(cmd.settings().seed.has_value(), "--seed");
    const std::uint64_t seed = *cmd.settings().seed;
    GeneratorSpec spec = f.spec_path.empty() ? GeneratorSpec::web_log_preset(seed) : load_generator_spec(f.spec_path, seed);
    if (!f.days.empty()) spec.days = static_cast<int>(parse_int("--days", f.days));
    const auto records = generate(spec);
    cmd.emit("log.csv", render([&](std::ostream& o) { write_log(o, records); }));
    cmd.note("generated " + std::to_string(records.size()) + " records");
}

void cmd_run(Command& cmd, const Flags& f) {
    const auto& c = cmd.config();
    require(c.min_conf.has_value(), "--min-conf");
    require(c.window.has_value(), "--window");
    const auto records = load_log(f.input);
    const auto partition = clean(records);
    for (const auto& [entity, recs] : partition)
        cmd.emit(fs::path("clean") / (safe_file_name(entity) + ".csv"),
                 render([&](std::ostream& o) { write_log(o, recs); }));
    const auto dataset = fold_records(records, c);
    cmd.emit("folded.csv", render([&](std::ostream& o) { write_folded_csv(o, dataset); }));

    const auto all = discover_intervals(dataset, c, true);
    cmd.emit("allsi_intervals.csv",
             render([&](std::ostream& o) { write_intervals_csv(o, all, c.periodicity, c.granularity); }));
    std::vector<SignificantInterval> base = all;
    if (c.max_len) {
        base = discover_intervals(dataset, c, false);
        cmd.emit("si_intervals.csv",
                 render([&](std::ostream& o) { write_intervals_csv(o, base, c.periodicity, c.granularity); }));
    } else {
        cmd.note("no --max-len: episodes mined from One-Pass-AllSI intervals");
    }
    const auto input = FedInput::from_intervals(base);
    const auto episodes = one_pass_fed(input, *c.window, c.semantics);
    write_episode_levels(cmd, episodes, input.distinct_entities, "");
}

}  // namespace

Percent parse_min_conf(const std::string& text) {
    const Percent p = Percent::parse(text, 2);
    check_min_conf(p);
    return p;
}

json config_to_json(const MiningConfig& c) {
    json j;
    j["periodicity"] = std::string(to_string(c.periodicity));
    j["granularity"] = std::string(to_string(c.granularity));
    j["semantics"] = std::string(to_string(c.semantics));
    j["min-conf"] = c.min_conf ? json(c.min_conf->format(2)) : json(nullptr);
    j["max-len"] = c.max_len ? json(*c.max_len) : json(nullptr);
    j["window"] = c.window ? json(*c.window) : json(nullptr);
    j["n"] = c.n_override ? json(*c.n_override) : json(nullptr);
    return j;
}

MiningConfig config_from_json(const json& j) {
    Flags f;  // reuse the flag resolution path so both routes validate identically
    const auto get = [&](const char* key, std::string& dst) {
        if (j.contains(key) && !j[key].is_null()) dst = scalar_text(j[key]);
    };
    get("periodicity", f.periodicity);
    get("granularity", f.granularity);
    get("semantics", f.semantics);
    get("min-conf", f.min_conf);
    get("max-len", f.max_len);
    get("window", f.window);
    get("n", f.n);
    return resolve(f).config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Significant interval and frequent episode discovery over access logs", "sigfed"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", SIGFED_VERSION);

    Flags f;
    app.add_option("--config", f.config_path, "JSON file supplying any flag (flags win)");

    const auto out_opt = [&](CLI::App* sub) { sub->add_option("-o,--out", f.out_dir, "output directory")->required(); };
    const auto input = [&](CLI::App* sub, const char* what) { sub->add_option("input", f.input, what)->required(); };
    const auto folding = [&](CLI::App* sub) {
        sub->add_option("--periodicity", f.periodicity, "daily | weekly (default daily)");
        sub->add_option("--granularity", f.granularity, "minute | second (default minute)");
        sub->add_option("--n", f.n, "number of periods N (overrides the observed span)");
    };
    const auto sid = [&](CLI::App* sub, bool with_len) {
        sub->add_option("--min-conf", f.min_conf, "minimum confidence in percent, up to 2 decimals");
        if (with_len) sub->add_option("--max-len", f.max_len, "maximum interval span in granularity units");
    };
    const auto fed = [&](CLI::App* sub) {
        sub->add_option("--window", f.window, "sequential window in granularity units");
        sub->add_option("--semantics", f.semantics, "s | e (default s)");
    };

    auto* clean_cmd = app.add_subcommand("clean", "split a raw log into per-entity Access files");
    input(clean_cmd, "raw log CSV");
    out_opt(clean_cmd);

    auto* fold_cmd = app.add_subcommand("fold", "fold a log over its periodicity");
    input(fold_cmd, "log CSV (raw or cleaned)");
    out_opt(fold_cmd);
    folding(fold_cmd);

    auto* si_cmd = app.add_subcommand("si", "One-Pass-SI over a folded table");
    input(si_cmd, "folded CSV");
    out_opt(si_cmd);
    sid(si_cmd, true);

    auto* allsi_cmd = app.add_subcommand("allsi", "One-Pass-AllSI over a folded table");
    input(allsi_cmd, "folded CSV");
    out_opt(allsi_cmd);
    sid(allsi_cmd, false);

    auto* fed_cmd = app.add_subcommand("fed", "One-Pass-FED over an interval table");
    input(fed_cmd, "interval CSV");
    out_opt(fed_cmd);
    fed(fed_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over a log");
    input(sweep_cmd, "log CSV");
    out_opt(sweep_cmd);
    folding(sweep_cmd);
    sid(sweep_cmd, true);
    fed(sweep_cmd);
    sweep_cmd->add_option("--param", f.param, "maxlen | minconf | compare | window")->required();
    sweep_cmd->add_option("--values", f.values, "comma-separated parameter values")->required();
    sweep_cmd->add_flag("--allsi", f.allsi, "window sweep: mine episodes from AllSI intervals");
    sweep_cmd->add_flag("--no-timing", f.no_timing, "write 0 in the elapsedMicros column");

    auto* contrib_cmd = app.add_subcommand("contrib", "per-month entity contribution to episodes");
    input(contrib_cmd, "log CSV");
    out_opt(contrib_cmd);
    folding(contrib_cmd);
    sid(contrib_cmd, true);
    fed(contrib_cmd);
    contrib_cmd->add_flag("--allsi", f.allsi, "use One-Pass-AllSI intervals");

    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic access log");
    out_opt(gen_cmd);
    gen_cmd->add_option("--seed", f.seed, "RNG seed");
    gen_cmd->add_option("--days", f.days, "number of days (overrides the spec)");
    gen_cmd->add_option("--spec", f.spec_path, "generator spec JSON (default: 90-day five-site preset)");

    auto* run_cmd = app.add_subcommand("run", "clean, fold, SI/AllSI and FED in one go");
    input(run_cmd, "raw log CSV");
    out_opt(run_cmd);
    folding(run_cmd);
    sid(run_cmd, true);
    fed(run_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        Command cmd(chosen->get_name(), f, resolve(f));
        if (chosen == clean_cmd) cmd_clean(cmd, f);
        else if (chosen == fold_cmd) cmd_fold(cmd, f);
        else if (chosen == si_cmd) cmd_sid(cmd, f, false);
        else if (chosen == allsi_cmd) cmd_sid(cmd, f, true);
        else if (chosen == fed_cmd) cmd_fed(cmd, f);
        else if (chosen == sweep_cmd) cmd_sweep(cmd, f);
        else if (chosen == contrib_cmd) cmd_contrib(cmd, f);
        else if (chosen == gen_cmd) cmd_gen(cmd, f);
        else if (chosen == run_cmd) cmd_run(cmd, f);
        cmd.finish();
    } catch (const ConfigError& e) {
        err << "sigfed: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "sigfed: parse error, " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        err << "sigfed: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}

}  // namespace sigfed::cli
