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

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "linkdyn/classifier.hpp"
#include "linkdyn/config.hpp"
#include "linkdyn/graph.hpp"
#include "linkdyn/ingest.hpp"

namespace linkdyn {

struct MechanismCounts {
    std::uint64_t pa = 0;
    std::uint64_t tc = 0;
    std::uint64_t r = 0;
    std::uint64_t pa_tc = 0; ///< edges flagged both PA and TC
};

struct ClassCounts {
    std::uint64_t dhh = 0, dll = 0, dhl = 0;
    std::uint64_t chh = 0, cll = 0, chl = 0;
    std::uint64_t ajj = 0, aoo = 0, ajo = 0;
};

struct DayClassification {
    MechanismCounts mechanism;
    ClassCounts local;
    /// Edges whose tested PA probability had a zero denominator.
    std::uint64_t pa_undefined = 0;
};

struct DaySummary {
    DayIndex day = 0;
    std::uint64_t n_nodes = 0;
    std::uint64_t n_edges = 0;
    std::uint64_t new_nodes = 0;
    std::uint64_t new_edges = 0;
    double density = 0.0;
    double avg_cc = 0.0;
    double avg_degree = 0.0;
    std::uint32_t max_degree = 0;
    /// Empty on warmup (build-only) days.
    std::optional<DayClassification> classification;
    std::optional<double> wall_time_ms;
    IngestStats ingest;
    std::uint64_t duplicate_events = 0;
};

enum class HistogramKind { DegreeDist, PaProbDist };

struct HistogramBin {
    double lower_bound = 0.0;
    std::uint64_t count = 0;
};

struct Histogram {
    HistogramKind kind = HistogramKind::DegreeDist;
    DayIndex day = 0;
    std::vector<HistogramBin> bins;

    std::uint64_t total() const;
};

/// Probability histogram layout: bin 0 holds exact zeros, bins 1..60 are
/// log-spaced over [1e-9, 1). Values below 1e-9 land in bin 1 and values
/// of 1 or more (possible with the exclusive denominator) in bin 60.
struct PaProbBins {
    static constexpr std::size_t kLogBins = 60;
    static constexpr double kMinExp = -9.0;
    static constexpr double kMaxExp = 0.0;

    static std::size_t index(double p);
    static double lower_bound(std::size_t bin);
    static Histogram empty(DayIndex day);
};

Histogram degree_histogram(const DynamicGraph& graph, DayIndex day);

/// One finished run: per-day summaries plus histograms, ready for export.
struct RunReport {
    RunConfig config;
    std::vector<DaySummary> days;
    std::vector<Histogram> degree_hists;
    std::vector<Histogram> pa_hists;
};

/// Per-day accumulator driven by the run loop: begin_day, any number of
/// record_edge calls, end_day.
class MetricsEngine {
public:
    explicit MetricsEngine(ClassifierConfig cfg = {});

    /// Freezes the day's averages from `graph` and zeroes the counters.
    /// Throws UsageError if the previous day was not ended.
    void begin_day(DayIndex day, bool analyze, const DynamicGraph& graph);

    bool day_open() const { return open_; }
    bool analyzing() const { return analyze_; }
    const DayAverages& averages() const { return averages_; }

    /// Counts one Added edge. `tested_probability` is the value the PA
    /// policy compared against beta. Throws UsageError outside an analyzed
    /// day or for a non-Added outcome.
    void record_edge(const InsertOutcome& outcome, const MechanismLabel& mech,
                     const LocalClasses& local, double tested_probability,
                     bool probability_undefined = false);

    void record_duplicate() { ++duplicates_; }

    /// Closes the day against the current graph and appends its summary.
    const DaySummary& end_day(const DynamicGraph& graph, const IngestStats& ingest = {});

    const std::vector<DaySummary>& days() const { return days_; }
    const std::vector<Histogram>& degree_hists() const { return degree_hists_; }
    const std::vector<Histogram>& pa_hists() const { return pa_hists_; }

    RunReport take_report(RunConfig config);

private:
    ClassifierConfig cfg_;
    bool open_ = false;
    bool analyze_ = false;
    DayIndex day_ = 0;
    DayAverages averages_;
    std::size_t nodes_at_begin_ = 0;
    std::size_t edges_at_begin_ = 0;
    std::uint64_t recorded_ = 0;
    std::uint64_t duplicates_ = 0;
    DayClassification counts_;
    Histogram pa_hist_;
    std::chrono::steady_clock::time_point started_;
    const DynamicGraph* last_graph_ = nullptr;
    std::size_t last_nodes_ = 0;
    std::size_t last_edges_ = 0;
    GlobalStats last_stats_;

    std::vector<DaySummary> days_;
    std::vector<Histogram> degree_hists_;
    std::vector<Histogram> pa_hists_;
};

/// Writes summary.csv, proportions.csv and the per-day histogram CSVs
/// (Csv), summary.json (Json), or both (All). Output bytes depend only on
/// the report. Throws IoError if `out_dir` cannot be created or written.
void export_report(const RunReport& report, const std::filesystem::path& out_dir,
                   ExportFormat format);

/// Reads a summary.json written by export_report back into a report.
/// Throws IoError / DataError on unreadable or malformed input.
RunReport load_report_json(const std::filesystem::path& path);

} // namespace linkdyn
