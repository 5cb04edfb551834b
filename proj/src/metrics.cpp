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

#include "linkdyn/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "linkdyn/error.hpp"

namespace linkdyn {

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (const auto& b : bins)
        t += b.count;
    return t;
}

std::size_t PaProbBins::index(double p) {
    if (!(p > 0.0))
        return 0;
    const double pos = (std::log10(p) - kMinExp) * static_cast<double>(kLogBins) / (kMaxExp - kMinExp);
    if (pos < 0.0)
        return 1;
    const auto i = static_cast<std::size_t>(std::floor(pos));
    return 1 + std::min(i, kLogBins - 1);
}

double PaProbBins::lower_bound(std::size_t bin) {
    if (bin == 0)
        return 0.0;
    const double step = (kMaxExp - kMinExp) / static_cast<double>(kLogBins);
    return std::pow(10.0, kMinExp + step * static_cast<double>(bin - 1));
}

Histogram PaProbBins::empty(DayIndex day) {
    Histogram h;
    h.kind = HistogramKind::PaProbDist;
    h.day = day;
    h.bins.resize(kLogBins + 1);
    for (std::size_t i = 0; i < h.bins.size(); ++i)
        h.bins[i].lower_bound = lower_bound(i);
    return h;
}

Histogram degree_histogram(const DynamicGraph& graph, DayIndex day) {
    const auto counts = graph.degree_counts();
    Histogram h;
    h.kind = HistogramKind::DegreeDist;
    h.day = day;
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (counts[k])
            h.bins.push_back({static_cast<double>(k), counts[k]});
    return h;
}

MetricsEngine::MetricsEngine(ClassifierConfig cfg) : cfg_(cfg) {}

void MetricsEngine::begin_day(DayIndex day, bool analyze, const DynamicGraph& graph) {
    if (open_)
        throw UsageError("begin_day(" + std::to_string(day) + ") called while day " +
                         std::to_string(day_) + " is still open");
    open_ = true;
    analyze_ = analyze;
    day_ = day;
    // The previous end_day already summarized this exact graph state.
    if (last_graph_ == &graph && last_nodes_ == graph.node_count() &&
        last_edges_ == graph.edge_count()) {
        averages_ = DayAverages{last_stats_.avg_degree, last_stats_.avg_cc, day};
    } else {
        averages_ = snapshot_averages(graph, day);
    }
    nodes_at_begin_ = graph.node_count();
    edges_at_begin_ = graph.edge_count();
    recorded_ = 0;
    duplicates_ = 0;
    counts_ = {};
    pa_hist_ = PaProbBins::empty(day);
    started_ = std::chrono::steady_clock::now();
}

void MetricsEngine::record_edge(const InsertOutcome& outcome, const MechanismLabel& mech,
                                const LocalClasses& local, double tested_probability,
                                bool probability_undefined) {
    if (!open_ || !analyze_)
        throw UsageError("record_edge outside an analyzed day");
    if (!outcome.added())
        throw UsageError("record_edge needs an Added outcome");
    ++recorded_;

    auto& m = counts_.mechanism;
    m.pa += mech.is_pa;
    m.tc += mech.is_tc;
    m.r += mech.is_r;
    m.pa_tc += mech.is_pa && mech.is_tc;

    auto& c = counts_.local;
    switch (local.degree) {
    case DegreeClass::DHH: ++c.dhh; break;
    case DegreeClass::DLL: ++c.dll; break;
    case DegreeClass::DHL: ++c.dhl; break;
    }
    switch (local.clustering) {
    case ClusteringClass::CHH: ++c.chh; break;
    case ClusteringClass::CLL: ++c.cll; break;
    case ClusteringClass::CHL: ++c.chl; break;
    }
    switch (local.age) {
    case AgeClass::AJJ: ++c.ajj; break;
    case AgeClass::AOO: ++c.aoo; break;
    case AgeClass::AJO: ++c.ajo; break;
    }
    counts_.pa_undefined += probability_undefined;
    ++pa_hist_.bins[PaProbBins::index(tested_probability)].count;
}

const DaySummary& MetricsEngine::end_day(const DynamicGraph& graph, const IngestStats& ingest) {
    if (!open_)
        throw UsageError("end_day without begin_day");

    DaySummary s;
    s.day = day_;
    const GlobalStats g = graph.global_stats();
    last_graph_ = &graph;
    last_nodes_ = graph.node_count();
    last_edges_ = graph.edge_count();
    last_stats_ = g;
    s.n_nodes = g.n_nodes;
    s.n_edges = g.n_edges;
    s.new_nodes = g.n_nodes - nodes_at_begin_;
    s.new_edges = g.n_edges - edges_at_begin_;
    s.density = g.density;
    s.avg_cc = g.avg_cc;
    s.avg_degree = g.avg_degree;
    s.max_degree = g.max_degree;
    s.ingest = ingest;
    s.ingest.errors.clear();
    s.duplicate_events = duplicates_;
    if (analyze_) {
        if (recorded_ != s.new_edges)
            throw UsageError("day " + std::to_string(day_) + ": " + std::to_string(recorded_) +
                             " edges recorded but graph grew by " + std::to_string(s.new_edges));
        s.classification = counts_;
        pa_hists_.push_back(std::move(pa_hist_));
    }
    degree_hists_.push_back(degree_histogram(graph, day_));
    const auto elapsed = std::chrono::steady_clock::now() - started_;
    s.wall_time_ms = std::chrono::duration<double, std::milli>(elapsed).count();

    open_ = false;
    days_.push_back(std::move(s));
    return days_.back();
}

RunReport MetricsEngine::take_report(RunConfig config) {
    if (open_)
        throw UsageError("take_report while a day is open");
    RunReport r;
    r.config = std::move(config);
    r.days = std::move(days_);
    r.degree_hists = std::move(degree_hists_);
    r.pa_hists = std::move(pa_hists_);
    days_.clear();
    degree_hists_.clear();
    pa_hists_.clear();
    return r;
}

} // namespace linkdyn
