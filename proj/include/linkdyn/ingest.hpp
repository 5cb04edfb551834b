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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linkdyn/graph.hpp"

namespace linkdyn {

enum class CallKind { Call, Sms, Fax };

std::string_view to_string(CallKind kind);

/// One parsed line of a day file: "YYYY-MM-DD;caller;callee;KIND;duration_s".
struct CdrRecord {
    std::chrono::sys_days date{};
    std::string caller;
    std::string callee;
    CallKind kind = CallKind::Call;
    std::uint64_t duration_s = 0;
};

struct ParseError {
    std::size_t line_number = 0;
    std::string message;
};

using ParseResult = std::variant<CdrRecord, ParseError>;

ParseResult parse_line(std::string_view line, std::size_t line_number = 0);

/// "YYYY-MM-DD" -> civil date. Empty on malformed or impossible dates.
std::optional<std::chrono::sys_days> parse_iso_date(std::string_view text);
std::string format_iso_date(std::chrono::sys_days date);
/// "YYYYMMDD" (file stem) -> civil date.
std::optional<std::chrono::sys_days> parse_compact_date(std::string_view text);
std::string format_compact_date(std::chrono::sys_days date);

struct EdgeEvent {
    DayIndex day = 0;
    NodeId u; ///< caller
    NodeId v; ///< callee
    CallKind kind = CallKind::Call;
    std::uint64_t sequence = 0;
};

struct IngestStats {
    std::uint64_t lines_read = 0;
    std::uint64_t records_parsed = 0;
    std::uint64_t fax_dropped = 0;
    std::uint64_t self_dropped = 0;
    std::uint64_t malformed = 0;
    std::uint64_t emitted = 0;
    /// First few parse errors, kept for diagnostics.
    std::vector<ParseError> errors;

    static constexpr std::size_t kMaxKeptErrors = 16;
};

struct DayBatch {
    std::vector<EdgeEvent> events;
    IngestStats stats;
};

/// Reads one day file in order. Fax records and self-communications are
/// dropped; malformed lines are counted and skipped. Both parties of every
/// emitted event are interned into `graph` with birth day `day`. Dropped
/// records never intern anything.
///
/// If the file stem is a YYYYMMDD date, lines carrying a different date are
/// counted as malformed. Blank lines are ignored.
///
/// Throws IoError if the file cannot be read.
DayBatch load_day(const std::filesystem::path& path, DayIndex day, DynamicGraph& graph,
                  std::uint64_t first_sequence = 0);

struct DayFile {
    DayIndex day = 0;
    std::filesystem::path path;
    std::chrono::sys_days date{};
    bool analyze = false; ///< false for warmup (build-only) days
};

/// Lists YYYYMMDD.csv files in `dir`, sorted by name, and keeps the first
/// warmup + study of them. Day indices are positions in that list.
///
/// Throws IoError if `dir` is not a readable directory and DataError if it
/// holds fewer than warmup + study day files.
std::vector<DayFile> day_file_sequence(const std::filesystem::path& dir, std::size_t warmup,
                                       std::size_t study);

} // namespace linkdyn
