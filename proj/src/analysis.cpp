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

#include "linkdyn/analysis.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "linkdyn/error.hpp"

namespace linkdyn {

namespace {
constexpr std::size_t kPrefetchFar = 16;
constexpr std::size_t kPrefetchNear = 8;
} // namespace

RunReport run_analysis(const RunConfig& cfg, RunTotals* totals, const EdgeObserver& observer) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const auto files = day_file_sequence(cfg.input_dir, cfg.warmup_days, cfg.study_days);

    DynamicGraph graph;
    MetricsEngine metrics(cfg.classifier);
    const ClassifierConfig& ccfg = cfg.classifier;
    std::uint64_t sequence = 0;

    for (const DayFile& f : files) {
        // Averages are frozen before the day's subscribers are interned.
        metrics.begin_day(f.day, f.analyze, graph);
        DayBatch batch = load_day(f.path, f.day, graph, sequence);
        sequence += batch.events.size();

        const auto& events = batch.events;
        for (std::size_t i = 0; i < events.size(); ++i) {
            // Two-stage lookahead: records first, then neighbor-list tails.
            if (i + kPrefetchFar < events.size()) {
                graph.prefetch_node(events[i + kPrefetchFar].u);
                graph.prefetch_node(events[i + kPrefetchFar].v);
            }
            if (i + kPrefetchNear < events.size()) {
                graph.prefetch_neighbors(events[i + kPrefetchNear].u);
                graph.prefetch_neighbors(events[i + kPrefetchNear].v);
            }
            const EdgeEvent& ev = events[i];
            const InsertOutcome out = graph.insert_edge(ev.u, ev.v);
            if (!out.added()) {
                metrics.record_duplicate();
                continue;
            }
            if (!f.analyze)
                continue;
            const MechanismResult mech = classify_mechanism(out, ccfg);
            const LocalClasses local =
                classify_local(out, graph.node(ev.u).birth_day, graph.node(ev.v).birth_day, ev.day,
                               metrics.averages(), ccfg.age_window_days);
            metrics.record_edge(out, mech.label, local, mech.tested_probability,
                                mech.probability_undefined);
            if (observer)
                observer(ClassifiedEdge{ev, out, mech, local});
        }
        metrics.end_day(graph, batch.stats);
    }

    if (totals) {
        totals->events = sequence;
        totals->edges = graph.edge_count();
        totals->nodes = graph.node_count();
        totals->total_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    return metrics.take_report(cfg);
}

RunReport analyze_and_export(const RunConfig& cfg, RunTotals* totals) {
    RunReport report = run_analysis(cfg, totals);
    export_report(report, cfg.out_dir, cfg.format);
    return report;
}

std::vector<BenchRow> run_bench(const RunConfig& cfg, std::size_t max_days,
                                std::size_t repeats) {
    if (max_days == 0)
        throw UsageError("bench needs at least one day");
    if (repeats == 0)
        throw UsageError("bench needs at least one repeat");
    // Fail early, with the full count, if the directory is too short.
    day_file_sequence(cfg.input_dir, 0, max_days);

    std::vector<BenchRow> rows;
    for (std::size_t d = 1; d <= max_days; ++d) {
        RunConfig c = cfg;
        c.warmup_days = std::min(cfg.warmup_days, d);
        c.study_days = d - c.warmup_days;
        BenchRow row{d, 0.0, 0, 0};
        for (std::size_t r = 0; r < repeats; ++r) {
            RunTotals t;
            run_analysis(c, &t);
            if (r == 0 || t.total_ms < row.total_ms)
                row.total_ms = t.total_ms;
            row.events = t.events;
            row.edges = t.edges;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << "days,total_ms,events,edges\n";
    char ms[32];
    for (const auto& r : rows) {
        std::snprintf(ms, sizeof ms, "%.3f", r.total_ms);
        out << r.days << ',' << ms << ',' << r.events << ',' << r.edges << '\n';
    }
    if (!out)
        throw IoError("error writing " + path.string());
}

} // namespace linkdyn
