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

#include "linkdyn/linkdyn.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "linkdyn/analysis.hpp"
#include "linkdyn/error.hpp"
#include "linkdyn/generators.hpp"
#include "linkdyn/graph.hpp"
#include "linkdyn/ingest.hpp"
#include "linkdyn/metrics.hpp"

struct ldn_graph {
    linkdyn::DynamicGraph graph;
};

struct ldn_run {
    linkdyn::RunReport report;
    linkdyn::RunTotals totals;
};

namespace {

thread_local std::string g_last_error;

ldn_status fail(ldn_status code, std::string message) {
    g_last_error = std::move(message);
    return code;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
ldn_status guarded(Fn&& fn) {
    try {
        fn();
        return LDN_OK;
    } catch (const linkdyn::IoError& e) {
        return fail(LDN_ERR_IO, e.what());
    } catch (const linkdyn::DataError& e) {
        return fail(LDN_ERR_DATA, e.what());
    } catch (const linkdyn::UsageError& e) {
        return fail(LDN_ERR_USAGE, e.what());
    } catch (const std::out_of_range& e) {
        return fail(LDN_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LDN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LDN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LDN_ERR_INTERNAL, "unknown error");
    }
}

ldn_status null_arg(const char* name) {
    return fail(LDN_ERR_INVALID_ARGUMENT, std::string(name) + " is null");
}

linkdyn::RunConfig to_run_config(const ldn_run_config& c) {
    using namespace linkdyn;
    RunConfig r;
    if (c.input_dir)
        r.input_dir = c.input_dir;
    if (c.out_dir)
        r.out_dir = c.out_dir;
    r.warmup_days = c.warmup_days;
    r.study_days = c.study_days;
    r.classifier.beta = c.beta;
    r.classifier.age_window_days = c.age_window_days;
    switch (c.pa_policy) {
    case LDN_PA_CALLEE: r.classifier.pa_endpoint_policy = PaEndpointPolicy::CalleeOnly; break;
    case LDN_PA_EITHER: r.classifier.pa_endpoint_policy = PaEndpointPolicy::Either; break;
    case LDN_PA_BOTH: r.classifier.pa_endpoint_policy = PaEndpointPolicy::Both; break;
    default: throw UsageError("unknown PA endpoint policy");
    }
    switch (c.denominator) {
    case LDN_DENOM_EXCLUSIVE: r.classifier.denominator = DenominatorVariant::Exclusive; break;
    case LDN_DENOM_STANDARD: r.classifier.denominator = DenominatorVariant::Standard; break;
    default: throw UsageError("unknown denominator variant");
    }
    r.format = [&] {
        switch (c.format) {
        case LDN_FORMAT_CSV: return ExportFormat::Csv;
        case LDN_FORMAT_JSON: return ExportFormat::Json;
        case LDN_FORMAT_ALL: return ExportFormat::All;
        }
        throw UsageError("unknown export format");
    }();
    r.include_timing = c.include_timing != 0;
    return r;
}

linkdyn::ExportFormat to_format(ldn_format f) {
    switch (f) {
    case LDN_FORMAT_CSV: return linkdyn::ExportFormat::Csv;
    case LDN_FORMAT_JSON: return linkdyn::ExportFormat::Json;
    case LDN_FORMAT_ALL: return linkdyn::ExportFormat::All;
    }
    throw linkdyn::UsageError("unknown export format");
}

} // namespace

extern "C" {

const char* ldn_last_error(void) { return g_last_error.c_str(); }

const char* ldn_version(void) { return "0.1.0"; }

ldn_status ldn_graph_create(ldn_graph** out) {
    if (!out)
        return null_arg("out");
    return guarded([&] { *out = new ldn_graph(); });
}

void ldn_graph_destroy(ldn_graph* graph) { delete graph; }

ldn_status ldn_graph_intern(ldn_graph* graph, const char* subscriber, int32_t day,
                            uint32_t* out_id) {
    if (!graph || !subscriber || !out_id)
        return null_arg("graph, subscriber or out_id");
    return guarded([&] { *out_id = graph->graph.intern_node(subscriber, day).value; });
}

ldn_status ldn_graph_insert_edge(ldn_graph* graph, uint32_t u, uint32_t v,
                                 ldn_insert_outcome* out) {
    if (!graph || !out)
        return null_arg("graph or out");
    return guarded([&] {
        const auto r = graph->graph.insert_edge(linkdyn::NodeId{u}, linkdyn::NodeId{v});
        *out = {};
        switch (r.status) {
        case linkdyn::InsertStatus::Added: out->status = LDN_INSERT_ADDED; break;
        case linkdyn::InsertStatus::DuplicateEdge: out->status = LDN_INSERT_DUPLICATE; return;
        case linkdyn::InsertStatus::SelfLoop: out->status = LDN_INSERT_SELF_LOOP; return;
        }
        out->k_u_pre = r.k_u_pre;
        out->k_v_pre = r.k_v_pre;
        out->cc_u_pre = r.cc_u_pre;
        out->cc_v_pre = r.cc_v_pre;
        out->common_neighbors_pre = r.common_neighbor_count_pre;
        out->degree_sum_pre = r.degree_sum_pre;
    });
}

ldn_status ldn_graph_degree(const ldn_graph* graph, uint32_t v, uint32_t* out) {
    if (!graph || !out)
        return null_arg("graph or out");
    return guarded([&] { *out = graph->graph.degree(linkdyn::NodeId{v}); });
}

ldn_status ldn_graph_local_cc(const ldn_graph* graph, uint32_t v, double* out) {
    if (!graph || !out)
        return null_arg("graph or out");
    return guarded([&] { *out = graph->graph.local_cc(linkdyn::NodeId{v}); });
}

ldn_status ldn_graph_common_neighbors(const ldn_graph* graph, uint32_t u, uint32_t v,
                                      uint32_t* out) {
    if (!graph || !out)
        return null_arg("graph or out");
    return guarded([&] {
        *out = graph->graph.common_neighbor_count(linkdyn::NodeId{u}, linkdyn::NodeId{v});
    });
}

ldn_status ldn_graph_stats(const ldn_graph* graph, ldn_global_stats* out) {
    if (!graph || !out)
        return null_arg("graph or out");
    return guarded([&] {
        const auto g = graph->graph.global_stats();
        *out = {g.n_nodes, g.n_edges, g.density, g.avg_degree, g.max_degree, g.avg_cc};
    });
}

void ldn_gen_config_init(ldn_gen_config* cfg) {
    if (!cfg)
        return;
    const linkdyn::GenConfig d;
    cfg->model = LDN_MODEL_BA;
    cfg->days = d.days;
    cfg->nodes_per_day = d.nodes_per_day;
    cfg->m = d.m;
    cfg->edges_per_day = 0;
    cfg->w_pa = d.w_pa;
    cfg->w_tc = d.w_tc;
    cfg->w_r = d.w_r;
    cfg->seed = d.seed;
    cfg->start_date = nullptr;
}

ldn_status ldn_generate(const ldn_gen_config* cfg, const char* out_dir, ldn_gen_report* report) {
    if (!cfg || !out_dir)
        return null_arg("cfg or out_dir");
    return guarded([&] {
        using namespace linkdyn;
        GenConfig g;
        switch (cfg->model) {
        case LDN_MODEL_BA: g.model = GenModel::BaGrowth; break;
        case LDN_MODEL_RANDOM: g.model = GenModel::RandomGrowth; break;
        case LDN_MODEL_MIXED: g.model = GenModel::MixedModel; break;
        default: throw UsageError("unknown generator model");
        }
        g.days = cfg->days;
        g.nodes_per_day = cfg->nodes_per_day;
        g.m = cfg->m;
        if (cfg->edges_per_day > 0)
            g.edges_per_day = cfg->edges_per_day;
        g.w_pa = cfg->w_pa;
        g.w_tc = cfg->w_tc;
        g.w_r = cfg->w_r;
        g.seed = cfg->seed;
        if (cfg->start_date) {
            auto d = parse_iso_date(cfg->start_date);
            if (!d)
                throw UsageError(std::string("bad start date '") + cfg->start_date + "'");
            g.start_date = *d;
        }
        const GeneratedStream s = generate(g);
        write_dataset(s, out_dir);
        if (report) {
            *report = {};
            const auto& r = s.report;
            report->nodes = r.nodes;
            report->edges = r.edges;
            report->pref_attach = r.pref_attach;
            report->tri_close = r.tri_close;
            report->random = r.random;
            report->fallbacks = r.fallbacks;
            report->seed_edges = r.seed_edges;
            report->truncated = r.truncated;
            report->warning_count = static_cast<uint32_t>(r.warnings.size());
            if (!r.warnings.empty())
                std::strncpy(report->first_warning, r.warnings.front().c_str(),
                             sizeof report->first_warning - 1);
        }
    });
}

void ldn_run_config_init(ldn_run_config* cfg) {
    if (!cfg)
        return;
    const linkdyn::RunConfig d;
    cfg->input_dir = nullptr;
    cfg->out_dir = nullptr;
    cfg->warmup_days = static_cast<uint32_t>(d.warmup_days);
    cfg->study_days = static_cast<uint32_t>(d.study_days);
    cfg->beta = d.classifier.beta;
    cfg->pa_policy = LDN_PA_CALLEE;
    cfg->age_window_days = d.classifier.age_window_days;
    cfg->denominator = LDN_DENOM_EXCLUSIVE;
    cfg->format = LDN_FORMAT_ALL;
    cfg->include_timing = 0;
}

ldn_status ldn_analyze(const ldn_run_config* cfg, ldn_run** out) {
    if (!cfg || !out || !cfg->input_dir)
        return null_arg("cfg, cfg->input_dir or out");
    return guarded([&] {
        auto run = std::make_unique<ldn_run>();
        run->report = linkdyn::run_analysis(to_run_config(*cfg), &run->totals);
        *out = run.release();
    });
}

ldn_status ldn_analyze_export(const ldn_run_config* cfg, ldn_run** out) {
    if (!cfg || !out || !cfg->input_dir || !cfg->out_dir)
        return null_arg("cfg, cfg->input_dir, cfg->out_dir or out");
    return guarded([&] {
        auto run = std::make_unique<ldn_run>();
        run->report = linkdyn::analyze_and_export(to_run_config(*cfg), &run->totals);
        *out = run.release();
    });
}

ldn_status ldn_run_load(const char* summary_json, ldn_run** out) {
    if (!summary_json || !out)
        return null_arg("summary_json or out");
    return guarded([&] {
        auto run = std::make_unique<ldn_run>();
        run->report = linkdyn::load_report_json(summary_json);
        *out = run.release();
    });
}

ldn_status ldn_run_export(const ldn_run* run, const char* out_dir, ldn_format format) {
    if (!run || !out_dir)
        return null_arg("run or out_dir");
    return guarded([&] { linkdyn::export_report(run->report, out_dir, to_format(format)); });
}

size_t ldn_run_day_count(const ldn_run* run) { return run ? run->report.days.size() : 0; }

ldn_status ldn_run_day(const ldn_run* run, size_t index, ldn_day_summary* out) {
    if (!run || !out)
        return null_arg("run or out");
    if (index >= run->report.days.size())
        return fail(LDN_ERR_INVALID_ARGUMENT, "day index out of range");
    const auto& d = run->report.days[index];
    *out = {};
    out->day = d.day;
    out->n_nodes = d.n_nodes;
    out->n_edges = d.n_edges;
    out->new_nodes = d.new_nodes;
    out->new_edges = d.new_edges;
    out->density = d.density;
    out->avg_cc = d.avg_cc;
    out->avg_degree = d.avg_degree;
    out->max_degree = d.max_degree;
    if (d.classification) {
        const auto& m = d.classification->mechanism;
        const auto& c = d.classification->local;
        out->classified = 1;
        out->pa = m.pa;
        out->tc = m.tc;
        out->r = m.r;
        out->pa_tc = m.pa_tc;
        out->dhh = c.dhh;
        out->dll = c.dll;
        out->dhl = c.dhl;
        out->chh = c.chh;
        out->cll = c.cll;
        out->chl = c.chl;
        out->ajj = c.ajj;
        out->aoo = c.aoo;
        out->ajo = c.ajo;
    }
    out->wall_time_ms = d.wall_time_ms ? *d.wall_time_ms : -1.0;
    out->lines_read = d.ingest.lines_read;
    out->malformed = d.ingest.malformed;
    out->fax_dropped = d.ingest.fax_dropped;
    out->self_dropped = d.ingest.self_dropped;
    out->emitted = d.ingest.emitted;
    return LDN_OK;
}

ldn_status ldn_run_totals_get(const ldn_run* run, ldn_run_totals* out) {
    if (!run || !out)
        return null_arg("run or out");
    *out = {run->totals.events, run->totals.edges, run->totals.nodes, run->totals.total_ms};
    return LDN_OK;
}

void ldn_run_destroy(ldn_run* run) { delete run; }

ldn_status ldn_bench(const ldn_run_config* cfg, uint32_t max_days, uint32_t repeats,
                     const char* bench_csv) {
    if (!cfg || !cfg->input_dir || !bench_csv)
        return null_arg("cfg, cfg->input_dir or bench_csv");
    return guarded([&] {
        const auto rows = linkdyn::run_bench(to_run_config(*cfg), max_days, repeats ? repeats : 1);
        linkdyn::write_bench_csv(rows, bench_csv);
    });
}

} // extern "C"
