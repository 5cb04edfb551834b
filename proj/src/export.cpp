/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "linkdyn/error.hpp"
#include "linkdyn/metrics.hpp"

namespace linkdyn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Shortest representation that round-trips; identical bytes for identical
// values on any conforming implementation.
std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fraction(std::uint64_t part, std::uint64_t whole) {
    return num(static_cast<double>(part) / static_cast<double>(whole));
}

std::string millis(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out)
        throw IoError("error writing " + path.string());
}

const char* kSummaryHeader =
    "day,n_nodes,n_edges,new_nodes,new_edges,density,avg_cc,avg_degree,max_degree,"
    "pa,tc,r,dhh,dll,dhl,chh,cll,chl,ajj,aoo,ajo,wall_time_ms\n";

std::string summary_csv(const RunReport& rep) {
    std::ostringstream os;
    os << kSummaryHeader;
    for (const auto& d : rep.days) {
        os << d.day << ',' << d.n_nodes << ',' << d.n_edges << ',' << d.new_nodes << ','
           << d.new_edges << ',' << num(d.density) << ',' << num(d.avg_cc) << ','
           << num(d.avg_degree) << ',' << d.max_degree;
        if (d.classification) {
            const auto& m = d.classification->mechanism;
            const auto& c = d.classification->local;
            os << ',' << m.pa << ',' << m.tc << ',' << m.r << ',' << c.dhh << ',' << c.dll << ','
               << c.dhl << ',' << c.chh << ',' << c.cll << ',' << c.chl << ',' << c.ajj << ','
               << c.aoo << ',' << c.ajo;
        } else {
            os << ",,,,,,,,,,,,";
        }
        os << ',';
        if (rep.config.include_timing && d.wall_time_ms)
            os << millis(*d.wall_time_ms);
        os << '\n';
    }
    return os.str();
}

std::string proportions_csv(const RunReport& rep) {
    std::ostringstream os;
    os << "day,new_edges,pa,tc,r,pa_tc_overlap,dhh,dll,dhl,chh,cll,chl,ajj,aoo,ajo\n";
    for (const auto& d : rep.days) {
        if (!d.classification)
            continue;
        os << d.day << ',' << d.new_edges;
        const auto n = d.new_edges;
        const auto& m = d.classification->mechanism;
        const auto& c = d.classification->local;
        for (std::uint64_t v : {m.pa, m.tc, m.r, m.pa_tc, c.dhh, c.dll, c.dhl, c.chh, c.cll, c.chl,
                                c.ajj, c.aoo, c.ajo}) {
            os << ',';
            if (n > 0)
                os << fraction(v, n);
        }
        os << '\n';
    }
    return os.str();
}

std::string histogram_csv(const Histogram& h) {
    std::ostringstream os;
    os << (h.kind == HistogramKind::DegreeDist ? "degree,count\n" : "lower_bound,count\n");
    for (const auto& b : h.bins)
        os << num(b.lower_bound) << ',' << b.count << '\n';
    return os.str();
}

json config_json(const RunConfig& c) {
    return {
        {"input_dir", c.input_dir.generic_string()},
        {"warmup_days", c.warmup_days},
        {"study_days", c.study_days},
        {"beta", c.classifier.beta},
        {"pa_endpoint_policy", std::string(to_string(c.classifier.pa_endpoint_policy))},
        {"age_window_days", c.classifier.age_window_days},
        {"denominator_variant", std::string(to_string(c.classifier.denominator))},
        {"averages_basis", "prev_day_snapshot"},
        {"include_timing", c.include_timing},
    };
}

json ingest_json(const IngestStats& s) {
    return {{"lines_read", s.lines_read},       {"records_parsed", s.records_parsed},
            {"fax_dropped", s.fax_dropped},     {"self_dropped", s.self_dropped},
            {"malformed", s.malformed},         {"emitted", s.emitted}};
}

json day_json(const DaySummary& d, bool timing) {
    json j = {
        {"day", d.day},
        {"n_nodes", d.n_nodes},
        {"n_edges", d.n_edges},
        {"new_nodes", d.new_nodes},
        {"new_edges", d.new_edges},
        {"density", d.density},
        {"avg_cc", d.avg_cc},
        {"avg_degree", d.avg_degree},
        {"max_degree", d.max_degree},
    };
    static const char* kClassKeys[] = {"pa",  "tc",  "r",   "dhh", "dll", "dhl",
                                       "chh", "cll", "chl", "ajj", "aoo", "ajo"};
    if (d.classification) {
        const auto& m = d.classification->mechanism;
        const auto& c = d.classification->local;
        const std::uint64_t vals[] = {m.pa,  m.tc,  m.r,   c.dhh, c.dll, c.dhl,
                                      c.chh, c.cll, c.chl, c.ajj, c.aoo, c.ajo};
        for (std::size_t i = 0; i < std::size(vals); ++i)
            j[kClassKeys[i]] = vals[i];
        j["pa_tc_overlap"] = m.pa_tc;
        j["pa_undefined"] = d.classification->pa_undefined;
    } else {
        for (const char* k : kClassKeys)
            j[k] = nullptr;
        j["pa_tc_overlap"] = nullptr;
        j["pa_undefined"] = nullptr;
    }
    j["wall_time_ms"] = (timing && d.wall_time_ms) ? json(*d.wall_time_ms) : json(nullptr);
    j["duplicate_events"] = d.duplicate_events;
    j["ingest"] = ingest_json(d.ingest);
    return j;
}

json hist_json(const Histogram& h) {
    json bins = json::array();
    for (const auto& b : h.bins) {
        if (h.kind == HistogramKind::DegreeDist)
            bins.push_back({static_cast<std::uint64_t>(b.lower_bound), b.count});
        else
            bins.push_back({b.lower_bound, b.count});
    }
    return {{"day", h.day}, {"bins", std::move(bins)}};
}

std::string summary_json(const RunReport& rep) {
    json days = json::array();
    for (const auto& d : rep.days)
        days.push_back(day_json(d, rep.config.include_timing));
    json deg = json::array(), pa = json::array();
    for (const auto& h : rep.degree_hists)
        deg.push_back(hist_json(h));
    for (const auto& h : rep.pa_hists)
        pa.push_back(hist_json(h));
    json root = {{"config", config_json(rep.config)},
                 {"days", std::move(days)},
                 {"histograms", {{"degree", std::move(deg)}, {"pa_probability", std::move(pa)}}}};
    return root.dump(1) + "\n";
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    return (it == j.end() || it->is_null()) ? fallback : it->get<T>();
}

} // namespace

void export_report(const RunReport& report, const fs::path& out_dir, ExportFormat format) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory " + out_dir.string());

    if (format == ExportFormat::Csv || format == ExportFormat::All) {
        write_file(out_dir / "summary.csv", summary_csv(report));
        write_file(out_dir / "proportions.csv", proportions_csv(report));
        for (const auto& h : report.degree_hists)
            write_file(out_dir / ("degree_hist_day" + std::to_string(h.day) + ".csv"),
                       histogram_csv(h));
        for (const auto& h : report.pa_hists)
            write_file(out_dir / ("pa_prob_hist_day" + std::to_string(h.day) + ".csv"),
                       histogram_csv(h));
    }
    if (format == ExportFormat::Json || format == ExportFormat::All)
        write_file(out_dir / "summary.json", summary_json(report));
}

RunReport load_report_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    RunReport rep;
    try {
        const json root = json::parse(in);
        const json& c = root.at("config");
        rep.config.input_dir = c.at("input_dir").get<std::string>();
        rep.config.warmup_days = c.at("warmup_days").get<std::size_t>();
        rep.config.study_days = c.at("study_days").get<std::size_t>();
        rep.config.classifier.beta = c.at("beta").get<double>();
        rep.config.classifier.age_window_days = c.at("age_window_days").get<std::uint32_t>();
        auto policy = parse_pa_policy(c.at("pa_endpoint_policy").get<std::string>());
        auto denom = parse_denominator(c.at("denominator_variant").get<std::string>());
        if (!policy || !denom)
            throw DataError("unknown classifier setting in " + path.string());
        rep.config.classifier.pa_endpoint_policy = *policy;
        rep.config.classifier.denominator = *denom;
        rep.config.include_timing = get_or(c, "include_timing", false);

        for (const json& j : root.at("days")) {
            DaySummary d;
            d.day = j.at("day").get<DayIndex>();
            d.n_nodes = j.at("n_nodes").get<std::uint64_t>();
            d.n_edges = j.at("n_edges").get<std::uint64_t>();
            d.new_nodes = j.at("new_nodes").get<std::uint64_t>();
            d.new_edges = j.at("new_edges").get<std::uint64_t>();
            d.density = j.at("density").get<double>();
            d.avg_cc = j.at("avg_cc").get<double>();
            d.avg_degree = j.at("avg_degree").get<double>();
            d.max_degree = j.at("max_degree").get<std::uint32_t>();
            if (!j.at("pa").is_null()) {
                DayClassification k;
                k.mechanism = {j.at("pa").get<std::uint64_t>(), j.at("tc").get<std::uint64_t>(),
                               j.at("r").get<std::uint64_t>(),
                               j.at("pa_tc_overlap").get<std::uint64_t>()};
                auto& l = k.local;
                l.dhh = j.at("dhh").get<std::uint64_t>();
                l.dll = j.at("dll").get<std::uint64_t>();
                l.dhl = j.at("dhl").get<std::uint64_t>();
                l.chh = j.at("chh").get<std::uint64_t>();
                l.cll = j.at("cll").get<std::uint64_t>();
                l.chl = j.at("chl").get<std::uint64_t>();
                l.ajj = j.at("ajj").get<std::uint64_t>();
                l.aoo = j.at("aoo").get<std::uint64_t>();
                l.ajo = j.at("ajo").get<std::uint64_t>();
                k.pa_undefined = get_or<std::uint64_t>(j, "pa_undefined", 0);
                d.classification = k;
            }
            if (auto it = j.find("wall_time_ms"); it != j.end() && !it->is_null())
                d.wall_time_ms = it->get<double>();
            d.duplicate_events = get_or<std::uint64_t>(j, "duplicate_events", 0);
            if (auto it = j.find("ingest"); it != j.end()) {
                d.ingest.lines_read = get_or<std::uint64_t>(*it, "lines_read", 0);
                d.ingest.records_parsed = get_or<std::uint64_t>(*it, "records_parsed", 0);
                d.ingest.fax_dropped = get_or<std::uint64_t>(*it, "fax_dropped", 0);
                d.ingest.self_dropped = get_or<std::uint64_t>(*it, "self_dropped", 0);
                d.ingest.malformed = get_or<std::uint64_t>(*it, "malformed", 0);
                d.ingest.emitted = get_or<std::uint64_t>(*it, "emitted", 0);
            }
            rep.days.push_back(std::move(d));
        }

        const json& hists = root.at("histograms");
        for (const json& h : hists.at("degree")) {
            Histogram hist;
            hist.kind = HistogramKind::DegreeDist;
            hist.day = h.at("day").get<DayIndex>();
            for (const json& b : h.at("bins"))
                hist.bins.push_back({b.at(0).get<double>(), b.at(1).get<std::uint64_t>()});
            rep.degree_hists.push_back(std::move(hist));
        }
        for (const json& h : hists.at("pa_probability")) {
            Histogram hist;
            hist.kind = HistogramKind::PaProbDist;
            hist.day = h.at("day").get<DayIndex>();
            for (const json& b : h.at("bins"))
                hist.bins.push_back({b.at(0).get<double>(), b.at(1).get<std::uint64_t>()});
            rep.pa_hists.push_back(std::move(hist));
        }
    } catch (const json::exception& e) {
        throw DataError("malformed run file " + path.string() + ": " + e.what());
    }
    return rep;
}

} // namespace linkdyn
