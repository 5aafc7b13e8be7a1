#include "sigfed/errors.hpp"
#include "sigfed/fed.hpp"
#include "sigfed/folding.hpp"
#include "sigfed/harness.hpp"
#include "sigfed/ingest.hpp"
#include "sigfed/sid.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sigfed;

namespace {

// Accepts 60, 62.5 or "62.5"; floats go through their shortest repr.
Percent to_percent(const py::handle& v) {
    if (py::isinstance<py::bool_>(v)) throw ConfigError("confidence must be a number or a string");
    if (py::isinstance<py::int_>(v)) return Percent(v.cast<std::int64_t>());
    if (py::isinstance<py::float_>(v)) return Percent::parse(py::repr(v).cast<std::string>());
    if (py::isinstance<py::str>(v)) return Percent::parse(v.cast<std::string>());
    throw ConfigError("confidence must be a number or a string");
}

Percent min_conf_arg(const py::handle& v) {
    const Percent p = to_percent(v);
    check_min_conf(p);
    return p;
}

Periodicity periodicity_arg(const std::string& s) { return parse_periodicity(s); }
Granularity granularity_arg(const std::string& s) { return parse_granularity(s); }

std::string repr_interval(const SignificantInterval& x) {
    std::ostringstream ss;
    ss << "SignificantInterval(" << x.entity << ", " << x.start << ", " << x.end << ", confidence="
       << x.confidence.format(2) << ")";
    return ss.str();
}

std::string repr_episode(const Episode& e) {
    std::ostringstream ss;
    ss << "Episode((";
    for (std::size_t i = 0; i < e.entities.size(); ++i) ss << (i ? ", " : "") << e.entities[i];
    ss << "), " << e.start << ", " << e.end << ", confidence=" << e.confidence.format(2) << ")";
    return ss.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Significant interval and frequent episode discovery";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<LogRecord>(m, "LogRecord")
        .def(py::init([](std::string entity, const std::string& timestamp, bool accessed) {
                 return LogRecord{std::move(entity), accessed ? AccessStatus::Access : AccessStatus::NotAccess,
                                  parse_timestamp(timestamp)};
             }),
             py::arg("entity"), py::arg("timestamp"), py::arg("accessed") = true)
        .def_readonly("entity", &LogRecord::entity)
        .def_property_readonly("accessed", [](const LogRecord& r) { return r.status == AccessStatus::Access; })
        .def_property_readonly("timestamp", [](const LogRecord& r) { return format_timestamp(r.timestamp); })
        .def("__eq__", [](const LogRecord& a, const LogRecord& b) { return a == b; })
        .def("__repr__", [](const LogRecord& r) {
            return "LogRecord(" + r.entity + ", " + std::string(to_string(r.status)) + ", " +
                   format_timestamp(r.timestamp) + ")";
        });

    py::class_<FoldedSeries>(m, "FoldedSeries")
        .def(py::init([](std::string entity, std::vector<std::pair<Offset, std::int64_t>> points,
                         std::int64_t period_count, const std::string& periodicity, const std::string& granularity) {
                 FoldedSeries s;
                 s.entity = std::move(entity);
                 s.periodicity = periodicity_arg(periodicity);
                 s.granularity = granularity_arg(granularity);
                 for (const auto& [t, c] : points) s.points.push_back({t, c});
                 s.period_count = period_count;
                 s.validate();
                 return s;
             }),
             py::arg("entity"), py::arg("points"), py::arg("period_count"), py::arg("periodicity") = "daily",
             py::arg("granularity") = "minute")
        .def_readonly("entity", &FoldedSeries::entity)
        .def_readonly("period_count", &FoldedSeries::period_count)
        .def_property_readonly("periodicity", [](const FoldedSeries& s) { return std::string(to_string(s.periodicity)); })
        .def_property_readonly("granularity", [](const FoldedSeries& s) { return std::string(to_string(s.granularity)); })
        .def_property_readonly("points", [](const FoldedSeries& s) {
            std::vector<std::pair<Offset, std::int64_t>> out;
            for (const auto& p : s.points) out.emplace_back(p.time_point, p.access_count);
            return out;
        })
        .def("__repr__", [](const FoldedSeries& s) {
            return "FoldedSeries(" + s.entity + ", " + std::to_string(s.points.size()) +
                   " points, n=" + std::to_string(s.period_count) + ")";
        });

    py::class_<SignificantInterval>(m, "SignificantInterval")
        .def_readonly("entity", &SignificantInterval::entity)
        .def_readonly("start", &SignificantInterval::start)
        .def_readonly("end", &SignificantInterval::end)
        .def_readonly("access_count", &SignificantInterval::access_count)
        .def_readonly("point_count", &SignificantInterval::point_count)
        .def_property_readonly("span", &SignificantInterval::span)
        .def_property_readonly("length", &SignificantInterval::length)
        .def_property_readonly("density", [](const SignificantInterval& x) { return boost::rational_cast<double>(x.density); })
        .def_property_readonly("confidence", [](const SignificantInterval& x) { return x.confidence.to_double(); })
        .def_property_readonly("confidence_text", [](const SignificantInterval& x) { return x.confidence.format(2); })
        .def("__eq__", [](const SignificantInterval& a, const SignificantInterval& b) { return a == b; })
        .def("__repr__", &repr_interval);

    py::class_<Episode>(m, "Episode")
        .def_readonly("entities", &Episode::entities)
        .def_readonly("start", &Episode::start)
        .def_readonly("end", &Episode::end)
        .def_property_readonly("level", &Episode::level)
        .def_property_readonly("confidence", [](const Episode& e) { return e.confidence.to_double(); })
        .def_property_readonly("confidence_text", [](const Episode& e) { return e.confidence.format(2); })
        .def("__repr__", &repr_episode);

    m.def("parse_log", [](const std::string& text) { return parse_log(std::string_view(text)); }, py::arg("text"),
          "Parse entity,status,timestamp rows.");
    m.def("clean", [](const std::vector<LogRecord>& records) { return clean(records); }, py::arg("records"),
          "Drop NotAccess rows and split by entity.");
    m.def(
        "period_count",
        [](const std::vector<LogRecord>& records, const std::string& periodicity, std::optional<std::int64_t> n) {
            return period_count(records, periodicity_arg(periodicity), n);
        },
        py::arg("records"), py::arg("periodicity") = "daily", py::arg("n") = py::none());
    m.def(
        "fold",
        [](const std::vector<LogRecord>& records, const std::string& periodicity, const std::string& granularity,
           std::optional<std::int64_t> n) {
            return fold(records, periodicity_arg(periodicity), granularity_arg(granularity), n);
        },
        py::arg("records"), py::arg("periodicity") = "daily", py::arg("granularity") = "minute",
        py::arg("n") = py::none(), "Fold one entity's records.");
    m.def(
        "fold_all",
        [](const std::vector<LogRecord>& records, const std::string& periodicity, const std::string& granularity,
           std::optional<std::int64_t> n) {
            return fold_all(clean(records), periodicity_arg(periodicity), granularity_arg(granularity), n);
        },
        py::arg("records"), py::arg("periodicity") = "daily", py::arg("granularity") = "minute",
        py::arg("n") = py::none(), "Clean, then fold every entity with one shared N.");
    m.def(
        "format_clock",
        [](Offset offset, const std::string& periodicity, const std::string& granularity) {
            return format_clock(offset, periodicity_arg(periodicity), granularity_arg(granularity));
        },
        py::arg("offset"), py::arg("periodicity") = "daily", py::arg("granularity") = "minute");

    m.def(
        "one_pass_si",
        [](const FoldedSeries& s, const py::object& min_conf, Offset max_len) {
            return one_pass_si(s, min_conf_arg(min_conf), max_len);
        },
        py::arg("series"), py::arg("min_conf"), py::arg("max_len"));
    m.def(
        "one_pass_allsi",
        [](const FoldedSeries& s, const py::object& min_conf) { return one_pass_allsi(s, min_conf_arg(min_conf)); },
        py::arg("series"), py::arg("min_conf"));
    m.def("make_interval", &make_interval, py::arg("entity"), py::arg("start"), py::arg("end"),
          py::arg("access_count"), py::arg("point_count"), py::arg("periods"));
    m.def("prune_contained", &prune_contained, py::arg("candidates"));
    m.def(
        "classify_pair",
        [](const SignificantInterval& a, const SignificantInterval& b) { return std::string(to_string(classify_pair(a, b))); },
        py::arg("a"), py::arg("b"));

    m.def(
        "interval",
        [](std::string entity, Offset start, Offset end, const py::object& confidence) {
            SignificantInterval x;
            x.entity = std::move(entity);
            x.start = start;
            x.end = end;
            x.confidence = to_percent(confidence);
            return x;
        },
        py::arg("entity"), py::arg("start"), py::arg("end"), py::arg("confidence"),
        "Interval with only the fields episode discovery reads.");
    m.def(
        "one_pass_fed",
        [](std::vector<SignificantInterval> intervals, Offset window, const std::string& semantics) {
            return one_pass_fed(FedInput::from_intervals(std::move(intervals)), window, parse_semantics(semantics));
        },
        py::arg("intervals"), py::arg("window"), py::arg("semantics") = "s");
    m.def(
        "pattern_confidence",
        [](const std::vector<py::object>& confidences) {
            std::vector<Percent> v;
            for (const auto& c : confidences) v.push_back(to_percent(c));
            return pattern_confidence(v).to_double();
        },
        py::arg("confidences"));

    m.def(
        "generate",
        [](std::uint64_t seed, std::optional<int> days) {
            auto spec = GeneratorSpec::web_log_preset(seed);
            if (days) spec.days = *days;
            return generate(spec);
        },
        py::arg("seed"), py::arg("days") = py::none(), "Synthetic five-site log, 90 days unless `days` is given.");
}
