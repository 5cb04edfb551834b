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

#include <doctest.h>

#include <chrono>

#include "fs_util.hpp"
#include "linkdyn/error.hpp"
#include "linkdyn/ingest.hpp"

using namespace linkdyn;
using linkdyn::testing::TempDir;
using linkdyn::testing::write_file;
namespace chr = std::chrono;

namespace {

CdrRecord as_record(const ParseResult& r) {
    REQUIRE(std::holds_alternative<CdrRecord>(r));
    return std::get<CdrRecord>(r);
}

ParseError as_error(const ParseResult& r) {
    REQUIRE(std::holds_alternative<ParseError>(r));
    return std::get<ParseError>(r);
}

void make_day_files(const std::filesystem::path& dir, int count) {
    const chr::sys_days start = chr::year{2009} / 6 / 1;
    for (int i = 0; i < count; ++i)
        write_file(dir / (format_compact_date(start + chr::days{i}) + ".csv"), "");
}

} // namespace

TEST_CASE("parse_line accepts a well-formed call record") {
    const CdrRecord rec = as_record(parse_line("2009-06-01;0690000001;0690000002;CALL;37", 1));
    CHECK(rec.date == chr::sys_days{chr::year{2009} / 6 / 1});
    CHECK(rec.caller == "0690000001");
    CHECK(rec.callee == "0690000002");
    CHECK(rec.kind == CallKind::Call);
    CHECK(rec.duration_s == 37);
}

TEST_CASE("parse_line kind tokens") {
    CHECK(as_record(parse_line("2009-06-01;A;B;FAX;5")).kind == CallKind::Fax);
    CHECK(as_record(parse_line("2009-06-01;A;B;SMS;0")).kind == CallKind::Sms);
    CHECK(as_record(parse_line("2009-06-01;A;B;sms;0")).kind == CallKind::Sms);
    CHECK(as_record(parse_line("2009-06-01;A;B;CALL;3\r")).duration_s == 3);
}

TEST_CASE("parse_line rejects malformed input with the line number") {
    CHECK(as_error(parse_line("2009-06-01;A;B", 7)).line_number == 7);
    CHECK(as_error(parse_line("2009-06-01;A;B;CALL;5;x", 2)).line_number == 2);
    as_error(parse_line("2009-06-01;A;B;TELEX;5"));
    as_error(parse_line("2009-06-01;A;B;CALL;abc"));
    as_error(parse_line("2009-06-01;A;B;CALL;-4"));
    as_error(parse_line("2009-02-30;A;B;CALL;5"));
    as_error(parse_line("01/06/2009;A;B;CALL;5"));
    as_error(parse_line("2009-06-01;;B;CALL;5"));
}

TEST_CASE("date helpers round-trip") {
    const chr::sys_days d = chr::year{2009} / 6 / 18;
    CHECK(format_iso_date(d) == "2009-06-18");
    CHECK(format_compact_date(d) == "20090618");
    CHECK(parse_iso_date("2009-06-18") == d);
    CHECK(parse_compact_date("20090618") == d);
    CHECK_FALSE(parse_compact_date("2009061").has_value());
    CHECK_FALSE(parse_compact_date("20091301").has_value());
}

TEST_CASE("load_day filters self-calls") {
    TempDir tmp("ingest");
    write_file(tmp / "20090601.csv",
               "2009-06-01;A;B;CALL;10\n2009-06-01;A;A;CALL;10\n2009-06-01;B;C;CALL;10\n");
    DynamicGraph g;
    const DayBatch b = load_day(tmp / "20090601.csv", 0, g);
    CHECK(b.events.size() == 2);
    CHECK(b.stats.self_dropped == 1);
    CHECK(b.stats.lines_read == 3);
    CHECK(b.stats.records_parsed == 3);
    CHECK(b.stats.emitted == 2);
}

TEST_CASE("load_day keeps calls and SMS, drops fax") {
    TempDir tmp("ingest");
    write_file(tmp / "20090601.csv",
               "2009-06-01;A;B;CALL;10\n2009-06-01;B;C;SMS;0\n2009-06-01;C;D;FAX;3\n");
    DynamicGraph g;
    const DayBatch b = load_day(tmp / "20090601.csv", 0, g);
    CHECK(b.events.size() == 2);
    CHECK(b.stats.fax_dropped == 1);
    CHECK(b.events[1].kind == CallKind::Sms);
    NodeId dummy;
    CHECK_FALSE(g.find_node("D", dummy)); // fax party never enters the graph
}

TEST_CASE("load_day on an empty file") {
    TempDir tmp("ingest");
    write_file(tmp / "20090601.csv", "");
    DynamicGraph g;
    const DayBatch b = load_day(tmp / "20090601.csv", 0, g);
    CHECK(b.events.empty());
    CHECK(b.stats.lines_read == 0);
    CHECK(b.stats.records_parsed == 0);
    CHECK(b.stats.fax_dropped == 0);
    CHECK(b.stats.self_dropped == 0);
    CHECK(b.stats.malformed == 0);
    CHECK(b.stats.emitted == 0);
    CHECK(g.node_count() == 0);
}

TEST_CASE("load_day counts malformed lines and keeps going") {
    TempDir tmp("ingest");
    write_file(tmp / "20090601.csv",
               "2009-06-01;A;B;CALL;10\n"
               "garbage\n"
               "2009-06-01;A;B;PIGEON;1\n"
               "2009-06-02;A;C;CALL;1\n" // wrong day for this file
               "2009-06-01;C;A;SMS;0\n");
    DynamicGraph g;
    const DayBatch b = load_day(tmp / "20090601.csv", 0, g);
    CHECK(b.stats.lines_read == 5);
    CHECK(b.stats.malformed == 3);
    CHECK(b.stats.emitted == 2);
    CHECK(b.stats.errors.size() == 3);
    CHECK(b.stats.errors[0].line_number == 2);
    CHECK(b.stats.records_parsed + b.stats.malformed == b.stats.lines_read);
}

TEST_CASE("load_day assigns birth days and sequence numbers") {
    TempDir tmp("ingest");
    write_file(tmp / "20090602.csv", "2009-06-02;X;Y;CALL;1\n2009-06-02;Y;Z;SMS;0\n");
    DynamicGraph g;
    g.intern_node("X", 0);
    const DayBatch b = load_day(tmp / "20090602.csv", 4, g, 100);
    REQUIRE(b.events.size() == 2);
    CHECK(b.events[0].sequence == 100);
    CHECK(b.events[1].sequence == 101);
    CHECK(b.events[0].day == 4);
    CHECK(g.node(b.events[0].u).birth_day == 0);
    CHECK(g.node(b.events[0].v).birth_day == 4);
    CHECK(g.original_id(b.events[1].v) == "Z");
    CHECK(g.edge_count() == 0); // ingest interns only
}

TEST_CASE("load_day is deterministic") {
    TempDir tmp("ingest");
    write_file(tmp / "20090601.csv",
               "2009-06-01;A;B;CALL;10\n2009-06-01;B;C;SMS;0\nbad\n2009-06-01;C;A;CALL;2\n");
    DynamicGraph g1, g2;
    const DayBatch a = load_day(tmp / "20090601.csv", 0, g1);
    const DayBatch b = load_day(tmp / "20090601.csv", 0, g2);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].u == b.events[i].u);
        CHECK(a.events[i].v == b.events[i].v);
        CHECK(a.events[i].sequence == b.events[i].sequence);
    }
    CHECK(a.stats.malformed == b.stats.malformed);
    CHECK(a.stats.lines_read == b.stats.lines_read);
}

TEST_CASE("load_day on a missing file is fatal") {
    TempDir tmp("ingest");
    DynamicGraph g;
    CHECK_THROWS_AS(load_day(tmp / "20090601.csv", 0, g), IoError);
}

TEST_CASE("day_file_sequence") {
    TempDir tmp("seq");
    SUBCASE("18 files, 3 warmup, 15 study") {
        make_day_files(tmp.path(), 18);
        const auto seq = day_file_sequence(tmp.path(), 3, 15);
        REQUIRE(seq.size() == 18);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            CHECK(seq[i].day == static_cast<DayIndex>(i));
            CHECK(seq[i].analyze == (i >= 3));
        }
        CHECK(seq[0].path.filename() == "20090601.csv");
        CHECK(seq[17].path.filename() == "20090618.csv");
    }
    SUBCASE("no warmup") {
        make_day_files(tmp.path(), 18);
        const auto seq = day_file_sequence(tmp.path(), 0, 18);
        REQUIRE(seq.size() == 18);
        for (const auto& d : seq)
            CHECK(d.analyze);
    }
    SUBCASE("too few files") {
        make_day_files(tmp.path(), 10);
        CHECK_THROWS_AS(day_file_sequence(tmp.path(), 3, 15), DataError);
    }
    SUBCASE("extra files only take the first prefix, strays ignored") {
        make_day_files(tmp.path(), 5);
        write_file(tmp / "notes.csv", "x");
        write_file(tmp / "20090601.txt", "x");
        const auto seq = day_file_sequence(tmp.path(), 1, 2);
        REQUIRE(seq.size() == 3);
        CHECK_FALSE(seq[0].analyze);
        CHECK(seq[2].path.filename() == "20090603.csv");
    }
    SUBCASE("missing directory") {
        CHECK_THROWS_AS(day_file_sequence(tmp / "nope", 0, 1), IoError);
    }
}
