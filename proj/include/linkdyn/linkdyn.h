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

/* C interface to the linkdyn engine.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns an ldn_status; on failure a human-readable
 * message is available from ldn_last_error() on the same thread until the
 * next failing call. */
#ifndef LINKDYN_H
#define LINKDYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LINKDYN_BUILDING)
#    define LDN_API __declspec(dllexport)
#  else
#    define LDN_API __declspec(dllimport)
#  endif
#else
#  define LDN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ldn_status {
    LDN_OK = 0,
    LDN_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown id, bad enum */
    LDN_ERR_IO = 2,               /* missing/unreadable/unwritable file */
    LDN_ERR_DATA = 3,             /* unusable input, e.g. too few day files */
    LDN_ERR_USAGE = 4,            /* invalid configuration or call order */
    LDN_ERR_INTERNAL = 5
} ldn_status;

LDN_API const char* ldn_last_error(void);
LDN_API const char* ldn_version(void);

/* ---- incremental graph ------------------------------------------------ */

typedef struct ldn_graph ldn_graph;

typedef enum ldn_insert_status {
    LDN_INSERT_ADDED = 0,
    LDN_INSERT_DUPLICATE = 1,
    LDN_INSERT_SELF_LOOP = 2
} ldn_insert_status;

/* Pre-insertion snapshot; fields other than status are zero unless ADDED. */
typedef struct ldn_insert_outcome {
    ldn_insert_status status;
    uint32_t k_u_pre;
    uint32_t k_v_pre;
    double cc_u_pre;
    double cc_v_pre;
    uint32_t common_neighbors_pre;
    uint64_t degree_sum_pre;
} ldn_insert_outcome;

typedef struct ldn_global_stats {
    uint64_t n_nodes;
    uint64_t n_edges;
    double density;
    double avg_degree;
    uint32_t max_degree;
    double avg_cc;
} ldn_global_stats;

LDN_API ldn_status ldn_graph_create(ldn_graph** out);
LDN_API void ldn_graph_destroy(ldn_graph* graph);
LDN_API ldn_status ldn_graph_intern(ldn_graph* graph, const char* subscriber, int32_t day,
                                    uint32_t* out_id);
LDN_API ldn_status ldn_graph_insert_edge(ldn_graph* graph, uint32_t u, uint32_t v,
                                         ldn_insert_outcome* out);
LDN_API ldn_status ldn_graph_degree(const ldn_graph* graph, uint32_t v, uint32_t* out);
LDN_API ldn_status ldn_graph_local_cc(const ldn_graph* graph, uint32_t v, double* out);
LDN_API ldn_status ldn_graph_common_neighbors(const ldn_graph* graph, uint32_t u, uint32_t v,
                                              uint32_t* out);
LDN_API ldn_status ldn_graph_stats(const ldn_graph* graph, ldn_global_stats* out);

/* ---- synthetic generators --------------------------------------------- */

typedef enum ldn_model { LDN_MODEL_BA = 0, LDN_MODEL_RANDOM = 1, LDN_MODEL_MIXED = 2 } ldn_model;

typedef struct ldn_gen_config {
    ldn_model model;
    uint32_t days;
    uint32_t nodes_per_day;
    uint32_t m;
    uint64_t edges_per_day; /* 0: m * nodes_per_day */
    double w_pa;
    double w_tc;
    double w_r;
    uint64_t seed;
    const char* start_date; /* "YYYY-MM-DD"; NULL for 2009-06-01 */
} ldn_gen_config;

typedef struct ldn_gen_report {
    uint64_t nodes;
    uint64_t edges;
    uint64_t pref_attach;
    uint64_t tri_close;
    uint64_t random;
    uint64_t fallbacks;
    uint64_t seed_edges;
    uint64_t truncated;
    uint32_t warning_count;
    char first_warning[256];
} ldn_gen_report;

/* Defaults: BA, 18 days, 500 nodes/day, m = 2, equal weights, seed 0. */
LDN_API void ldn_gen_config_init(ldn_gen_config* cfg);
LDN_API ldn_status ldn_generate(const ldn_gen_config* cfg, const char* out_dir,
                                ldn_gen_report* report);

/* ---- analysis runs ---------------------------------------------------- */

typedef enum ldn_pa_policy {
    LDN_PA_CALLEE = 0,
    LDN_PA_EITHER = 1,
    LDN_PA_BOTH = 2
} ldn_pa_policy;

typedef enum ldn_denominator {
    LDN_DENOM_EXCLUSIVE = 0,
    LDN_DENOM_STANDARD = 1
} ldn_denominator;

typedef enum ldn_format { LDN_FORMAT_CSV = 1, LDN_FORMAT_JSON = 2, LDN_FORMAT_ALL = 3 } ldn_format;

typedef struct ldn_run_config {
    const char* input_dir;
    const char* out_dir; /* used by ldn_analyze_export */
    uint32_t warmup_days;
    uint32_t study_days;
    double beta;
    ldn_pa_policy pa_policy;
    uint32_t age_window_days;
    ldn_denominator denominator;
    ldn_format format;
    int include_timing;
} ldn_run_config;

/* Defaults: 3 warmup days, 15 study days, beta 4e-6, callee policy,
 * 3-day age window, exclusive denominator, all formats, no timing. */
LDN_API void ldn_run_config_init(ldn_run_config* cfg);

typedef struct ldn_run ldn_run;

typedef struct ldn_day_summary {
    int32_t day;
    uint64_t n_nodes;
    uint64_t n_edges;
    uint64_t new_nodes;
    uint64_t new_edges;
    double density;
    double avg_cc;
    double avg_degree;
    uint32_t max_degree;
    int classified; /* 0 on warmup days; the counts below are then zero */
    uint64_t pa, tc, r, pa_tc;
    uint64_t dhh, dll, dhl;
    uint64_t chh, cll, chl;
    uint64_t ajj, aoo, ajo;
    double wall_time_ms; /* negative when not recorded */
    uint64_t lines_read;
    uint64_t malformed;
    uint64_t fax_dropped;
    uint64_t self_dropped;
    uint64_t emitted;
} ldn_day_summary;

typedef struct ldn_run_totals {
    uint64_t events;
    uint64_t edges;
    uint64_t nodes;
    double total_ms;
} ldn_run_totals;

/* Runs the warmup + study protocol without exporting. */
LDN_API ldn_status ldn_analyze(const ldn_run_config* cfg, ldn_run** out);
/* ldn_analyze followed by an export into cfg->out_dir. */
LDN_API ldn_status ldn_analyze_export(const ldn_run_config* cfg, ldn_run** out);
/* Loads a summary.json written by a previous export. */
LDN_API ldn_status ldn_run_load(const char* summary_json, ldn_run** out);
LDN_API ldn_status ldn_run_export(const ldn_run* run, const char* out_dir, ldn_format format);
LDN_API size_t ldn_run_day_count(const ldn_run* run);
LDN_API ldn_status ldn_run_day(const ldn_run* run, size_t index, ldn_day_summary* out);
/* Zeroed for loaded runs. */
LDN_API ldn_status ldn_run_totals_get(const ldn_run* run, ldn_run_totals* out);
LDN_API void ldn_run_destroy(ldn_run* run);

/* Re-runs the analysis over the first 1..max_days files and writes
 * bench.csv (days,total_ms,events,edges) to bench_csv. Each prefix is
 * timed `repeats` times (0 counts as 1) and the fastest run kept. */
LDN_API ldn_status ldn_bench(const ldn_run_config* cfg, uint32_t max_days, uint32_t repeats,
                             const char* bench_csv);

#ifdef __cplusplus
}
#endif

#endif /* LINKDYN_H */
