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

#include "linkdyn/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "linkdyn/error.hpp"

namespace linkdyn {

namespace {

using namespace std::chrono;

template <typename Int>
bool parse_uint(std::string_view s, Int& out) {
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool all_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::optional<sys_days> make_date(std::string_view y, std::string_view m, std::string_view d) {
    int yi = 0;
    unsigned mi = 0, di = 0;
    if (!all_digits(y) || !all_digits(m) || !all_digits(d))
        return std::nullopt;
    if (!parse_uint(y, yi) || !parse_uint(m, mi) || !parse_uint(d, di))
        return std::nullopt;
    year_month_day ymd{year{yi}, month{mi}, day{di}};
    if (!ymd.ok())
        return std::nullopt;
    return sys_days{ymd};
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::toupper(x) == std::toupper(y);
           });
}

} // namespace

std::string_view to_string(CallKind kind) {
    switch (kind) {
    case CallKind::Call: return "CALL";
    case CallKind::Sms: return "SMS";
    case CallKind::Fax: return "FAX";
    }
    return "?";
}

std::optional<sys_days> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    return make_date(text.substr(0, 4), text.substr(5, 2), text.substr(8, 2));
}

std::optional<sys_days> parse_compact_date(std::string_view text) {
    if (text.size() != 8)
        return std::nullopt;
    return make_date(text.substr(0, 4), text.substr(4, 2), text.substr(6, 2));
}

std::string format_iso_date(sys_days date) {
    year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_compact_date(sys_days date) {
    year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d%02u%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

ParseResult parse_line(std::string_view line, std::size_t line_number) {
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);

    std::array<std::string_view, 5> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(';', start);
        std::string_view field = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
        if (count < fields.size())
            fields[count] = field;
        ++count;
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    if (count != fields.size())
        return ParseError{line_number, "expected 5 fields, got " + std::to_string(count)};

    CdrRecord rec;
    auto date = parse_iso_date(fields[0]);
    if (!date)
        return ParseError{line_number, "bad date '" + std::string(fields[0]) + "'"};
    rec.date = *date;
    if (fields[1].empty() || fields[2].empty())
        return ParseError{line_number, "empty subscriber id"};
    rec.caller = std::string(fields[1]);
    rec.callee = std::string(fields[2]);

    if (iequals(fields[3], "CALL"))
        rec.kind = CallKind::Call;
    else if (iequals(fields[3], "SMS"))
        rec.kind = CallKind::Sms;
    else if (iequals(fields[3], "FAX"))
        rec.kind = CallKind::Fax;
    else
        return ParseError{line_number, "unknown kind '" + std::string(fields[3]) + "'"};

    if (!parse_uint(fields[4], rec.duration_s))
        return ParseError{line_number, "bad duration '" + std::string(fields[4]) + "'"};
    return rec;
}

DayBatch load_day(const std::filesystem::path& path, DayIndex day, DynamicGraph& graph,
                  std::uint64_t first_sequence) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open day file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("error reading day file " + path.string());
    const std::string content = std::move(buf).str();

    const auto file_date = parse_compact_date(path.stem().string());

    DayBatch batch;
    IngestStats& st = batch.stats;
    auto fail = [&st](ParseError err) {
        ++st.malformed;
        if (st.errors.size() < IngestStats::kMaxKeptErrors)
            st.errors.push_back(std::move(err));
    };

    std::string_view rest = content;
    std::size_t line_number = 0;
    std::uint64_t seq = first_sequence;
    while (!rest.empty()) {
        std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_number;
        if (line.empty() || line == "\r")
            continue;
        ++st.lines_read;

        ParseResult parsed = parse_line(line, line_number);
        if (auto* err = std::get_if<ParseError>(&parsed)) {
            fail(std::move(*err));
            continue;
        }
        auto& rec = std::get<CdrRecord>(parsed);
        if (file_date && rec.date != *file_date) {
            fail({line_number, "date " + format_iso_date(rec.date) + " does not match file"});
            continue;
        }
        ++st.records_parsed;
        if (rec.kind == CallKind::Fax) {
            ++st.fax_dropped;
            continue;
        }
        if (rec.caller == rec.callee) {
            ++st.self_dropped;
            continue;
        }
        EdgeEvent ev;
        ev.day = day;
        ev.u = graph.intern_node(rec.caller, day);
        ev.v = graph.intern_node(rec.callee, day);
        ev.kind = rec.kind;
        ev.sequence = seq++;
        batch.events.push_back(ev);
        ++st.emitted;
    }
    return batch;
}

std::vector<DayFile> day_file_sequence(const std::filesystem::path& dir, std::size_t warmup,
                                       std::size_t study) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw IoError("input directory not found: " + dir.string());

    std::vector<std::pair<std::string, sys_days>> found;
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
        if (!it->is_regular_file(ec))
            continue;
        const fs::path& p = it->path();
        if (p.extension() != ".csv")
            continue;
        if (auto date = parse_compact_date(p.stem().string()))
            found.emplace_back(p.filename().string(), *date);
    }
    if (ec)
        throw IoError("cannot list directory " + dir.string() + ": " + ec.message());

    std::sort(found.begin(), found.end());
    const std::size_t needed = warmup + study;
    if (found.size() < needed) {
        throw DataError("need " + std::to_string(needed) + " day files (" + std::to_string(warmup) +
                        " warmup + " + std::to_string(study) + " study) in " + dir.string() +
                        ", found " + std::to_string(found.size()));
    }

    std::vector<DayFile> out;
    out.reserve(needed);
    for (std::size_t i = 0; i < needed; ++i) {
        DayFile f;
        f.day = static_cast<DayIndex>(i);
        f.path = dir / found[i].first;
        f.date = found[i].second;
        f.analyze = i >= warmup;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace linkdyn
