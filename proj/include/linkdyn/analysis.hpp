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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "linkdyn/classifier.hpp"
#include "linkdyn/config.hpp"
#include "linkdyn/graph.hpp"
#include "linkdyn/ingest.hpp"
#include "linkdyn/metrics.hpp"

namespace linkdyn {

/// Everything known about one classified edge, handed to an EdgeObserver.
struct ClassifiedEdge {
    const EdgeEvent& event;
    const InsertOutcome& outcome;
    const MechanismResult& mechanism;
    const LocalClasses& local;
};

using EdgeObserver = std::function<void(const ClassifiedEdge&)>;

struct RunTotals {
    std::uint64_t events = 0; ///< emitted edge events over all processed days
    std::uint64_t edges = 0;  ///< final |E|
    std::uint64_t nodes = 0;  ///< final |V|
    double total_ms = 0.0;    ///< ingest + graph + classification, no export
};

/// Warmup + study protocol over a directory of day files: warmup days only
/// build the graph, study days also classify every new edge against the
/// graph as it stood just before that edge.
///
/// Throws IoError / DataError on unusable input and UsageError on an
/// invalid config.
RunReport run_analysis(const RunConfig& cfg, RunTotals* totals = nullptr,
                       const EdgeObserver& observer = {});

/// run_analysis followed by export_report into cfg.out_dir.
RunReport analyze_and_export(const RunConfig& cfg, RunTotals* totals = nullptr);

struct BenchRow {
    std::size_t days = 0;
    double total_ms = 0.0;
    std::uint64_t events = 0;
    std::uint64_t edges = 0;
};

/// Re-runs the analysis from scratch over the first 1..max_days files.
/// Prefix d keeps min(warmup, d) warmup days and analyzes the rest.
/// With repeats > 1 each prefix is timed that many times and the fastest
/// run is kept.
std::vector<BenchRow> run_bench(const RunConfig& cfg, std::size_t max_days,
                                std::size_t repeats = 1);

/// Writes bench.csv (days,total_ms,events,edges).
void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path);

} // namespace linkdyn
