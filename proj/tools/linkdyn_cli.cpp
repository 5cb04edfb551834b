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

// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkdyn/linkdyn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int exit_code_for(ldn_status s) {
    switch (s) {
    case LDN_OK: return kExitOk;
    case LDN_ERR_INVALID_ARGUMENT:
    case LDN_ERR_USAGE: return kExitUsage;
    default: return kExitRuntime;
    }
}

int report_failure(const char* what, ldn_status s) {
    std::cerr << "linkdyn " << what << ": " << ldn_last_error() << '\n';
    return exit_code_for(s);
}

struct AnalyzeArgs {
    std::string input;
    std::string output = "out";
    std::string config_file;
    uint32_t warmup = 3;
    uint32_t days = 15;
    double beta = 4.0e-6;
    uint32_t age_window = 3;
    std::string policy = "callee";
    std::string denominator = "exclusive";
    std::string format = "all";
    bool timing = false;

    std::map<std::string, CLI::Option*> by_key;
};

const std::map<std::string, ldn_pa_policy> kPolicies = {
    {"callee", LDN_PA_CALLEE}, {"either", LDN_PA_EITHER}, {"both", LDN_PA_BOTH}};
const std::map<std::string, ldn_denominator> kDenominators = {
    {"exclusive", LDN_DENOM_EXCLUSIVE}, {"standard", LDN_DENOM_STANDARD}};
const std::map<std::string, ldn_format> kFormats = {
    {"csv", LDN_FORMAT_CSV}, {"json", LDN_FORMAT_JSON}, {"all", LDN_FORMAT_ALL}};
const std::map<std::string, ldn_model> kModels = {
    {"ba", LDN_MODEL_BA}, {"random", LDN_MODEL_RANDOM}, {"mixed", LDN_MODEL_MIXED}};

void add_run_options(CLI::App* cmd, AnalyzeArgs& a) {
    cmd->add_option("-i,--input", a.input, "Directory of YYYYMMDD.csv day files")
        ->required();
    cmd->add_option("-o,--output", a.output, "Output directory")->capture_default_str();
    cmd->add_option("--config", a.config_file,
                    "JSON file with any of: beta, pa_endpoint_policy, age_window_days, "
                    "denominator_variant, warmup_days, study_days, format. Flags win over it.")
        ->check(CLI::ExistingFile);
    a.by_key["warmup_days"] =
        cmd->add_option("--warmup", a.warmup, "Build-only days before classification starts "
                                              "(default 3, the original three-day build)")
            ->capture_default_str();
    a.by_key["study_days"] =
        cmd->add_option("--days", a.days, "Days classified after warmup (default 15, the original "
                                          "fifteen analyzed days)")
            ->capture_default_str();
    a.by_key["beta"] =
        cmd->add_option("--beta", a.beta, "Preferential-attachment probability threshold "
                                          "(default 4e-6, the originally reported cut-off)")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    a.by_key["age_window_days"] =
        cmd->add_option("--age-window-days", a.age_window,
                        "A node is young if born within this many days of the edge (default 3)")
            ->capture_default_str();
    a.by_key["pa_endpoint_policy"] =
        cmd->add_option("--pa-endpoint-policy", a.policy,
                        "Endpoint(s) tested against beta: callee (default), either, both")
            ->check(CLI::IsMember({"callee", "either", "both"}))
            ->capture_default_str();
    a.by_key["denominator_variant"] =
        cmd->add_option("--denominator-variant", a.denominator,
                        "exclusive: k/(sum of other degrees); standard: k/2|E|")
            ->check(CLI::IsMember({"exclusive", "standard"}))
            ->capture_default_str();
    a.by_key["format"] = cmd->add_option("--format", a.format, "Export format: csv, json or all")
                             ->check(CLI::IsMember({"csv", "json", "all"}))
                             ->capture_default_str();
    cmd->add_flag("--timing", a.timing,
                  "Record per-day wall time in the exports (makes output run-dependent)");
}

// Fills options the user did not pass on the command line from --config.
void apply_config_file(AnalyzeArgs& a) {
    if (a.config_file.empty())
        return;
    std::ifstream in(a.config_file);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", e.what());
    }
    if (!j.is_object())
        throw CLI::ValidationError("--config", "top level must be an object");
    for (auto& [key, value] : j.items()) {
        auto it = a.by_key.find(key);
        if (it == a.by_key.end())
            throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        if (it->second->count() > 0)
            continue;
        const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        it->second->clear();
        it->second->add_result(text);
        it->second->run_callback();
    }
}

ldn_run_config to_config(const AnalyzeArgs& a) {
    ldn_run_config c;
    ldn_run_config_init(&c);
    c.input_dir = a.input.c_str();
    c.out_dir = a.output.c_str();
    c.warmup_days = a.warmup;
    c.study_days = a.days;
    c.beta = a.beta;
    c.age_window_days = a.age_window;
    c.pa_policy = kPolicies.at(a.policy);
    c.denominator = kDenominators.at(a.denominator);
    c.format = kFormats.at(a.format);
    c.include_timing = a.timing ? 1 : 0;
    return c;
}

void print_run_summary(const ldn_run* run) {
    ldn_run_totals t;
    ldn_run_totals_get(run, &t);
    uint64_t pa = 0, tc = 0, r = 0, classified = 0;
    const size_t n = ldn_run_day_count(run);
    for (size_t i = 0; i < n; ++i) {
        ldn_day_summary d;
        ldn_run_day(run, i, &d);
        if (d.classified) {
            pa += d.pa;
            tc += d.tc;
            r += d.r;
            classified += d.new_edges;
        }
    }
    std::printf("days=%zu events=%llu nodes=%llu edges=%llu classified=%llu pa=%llu tc=%llu r=%llu "
                "time_ms=%.1f\n",
                n, static_cast<unsigned long long>(t.events),
                static_cast<unsigned long long>(t.nodes), static_cast<unsigned long long>(t.edges),
                static_cast<unsigned long long>(classified), static_cast<unsigned long long>(pa),
                static_cast<unsigned long long>(tc), static_cast<unsigned long long>(r), t.total_ms);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linkdyn: replay per-day communication records, track the growing network and "
                 "classify how each new link formed"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ldn_version());

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic dataset with ground-truth labels");
    std::string model = "ba", gen_out, start_date = "2009-06-01";
    ldn_gen_config gcfg;
    ldn_gen_config_init(&gcfg);
    gen->add_option("--model", model, "ba, random or mixed")
        ->check(CLI::IsMember({"ba", "random", "mixed"}))
        ->capture_default_str();
    gen->add_option("--days", gcfg.days, "Number of day files")->capture_default_str();
    gen->add_option("--nodes-per-day", gcfg.nodes_per_day, "Arriving nodes per day")
        ->capture_default_str();
    gen->add_option("--m", gcfg.m, "Edges per arriving node (ba) / per-node edge budget")
        ->capture_default_str();
    gen->add_option("--edges-per-day", gcfg.edges_per_day,
                    "Edge slots per day for random/mixed (0: m * nodes-per-day)")
        ->capture_default_str();
    gen->add_option("--w-pa", gcfg.w_pa, "Mixed model: preferential-attachment weight");
    gen->add_option("--w-tc", gcfg.w_tc, "Mixed model: triadic-closure weight");
    gen->add_option("--w-r", gcfg.w_r, "Mixed model: random weight");
    gen->add_option("--seed", gcfg.seed, "RNG seed")->capture_default_str();
    gen->add_option("--start-date", start_date, "Date of the first day file (YYYY-MM-DD)")
        ->capture_default_str();
    gen->add_option("-o,--output", gen_out, "Output directory")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run the warmup + study protocol and export");
    AnalyzeArgs an;
    add_run_options(analyze, an);

    // report
    auto* report = app.add_subcommand("report", "Re-export a finished run from its summary.json");
    std::string run_path, report_out, report_format = "csv";
    report->add_option("--run", run_path, "summary.json, or the directory holding it")
        ->required();
    report->add_option("-o,--output", report_out, "Output directory")->required();
    report->add_option("--format", report_format, "csv, json or all")
        ->check(CLI::IsMember({"csv", "json", "all"}))
        ->capture_default_str();

    // bench
    auto* bench = app.add_subcommand("bench", "Time the analysis over growing day prefixes");
    AnalyzeArgs bn;
    uint32_t max_days = 0;
    uint32_t repeat = 1;
    std::string bench_out;
    add_run_options(bench, bn);
    bench->add_option("--max-days", max_days, "Largest prefix (default: warmup + days)");
    bench->add_option("--repeat", repeat, "Time each prefix this many times, keep the fastest")
        ->check(CLI::Range(1u, 100u))
        ->capture_default_str();
    bench->add_option("--bench-out", bench_out, "bench.csv path (default: <output>/bench.csv)");

    try {
        app.parse(argc, argv);
        if (*analyze)
            apply_config_file(an);
        if (*bench)
            apply_config_file(bn);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*gen) {
        gcfg.model = kModels.at(model);
        gcfg.start_date = start_date.c_str();
        ldn_gen_report rep;
        if (ldn_status s = ldn_generate(&gcfg, gen_out.c_str(), &rep); s != LDN_OK)
            return report_failure("generate", s);
        if (rep.warning_count > 0)
            std::cerr << "warning: " << rep.first_warning
                      << (rep.warning_count > 1 ? " (and more)" : "") << '\n';
        std::printf("model=%s days=%u nodes=%llu edges=%llu pref_attach=%llu tri_close=%llu "
                    "random=%llu fallbacks=%llu seed_edges=%llu truncated=%llu\n",
                    model.c_str(), gcfg.days, static_cast<unsigned long long>(rep.nodes),
                    static_cast<unsigned long long>(rep.edges),
                    static_cast<unsigned long long>(rep.pref_attach),
                    static_cast<unsigned long long>(rep.tri_close),
                    static_cast<unsigned long long>(rep.random),
                    static_cast<unsigned long long>(rep.fallbacks),
                    static_cast<unsigned long long>(rep.seed_edges),
                    static_cast<unsigned long long>(rep.truncated));
        return kExitOk;
    }

    if (*analyze) {
        const ldn_run_config cfg = to_config(an);
        ldn_run* run = nullptr;
        if (ldn_status s = ldn_analyze_export(&cfg, &run); s != LDN_OK)
            return report_failure("analyze", s);
        print_run_summary(run);
        ldn_run_destroy(run);
        return kExitOk;
    }

    if (*report) {
        std::filesystem::path p = run_path;
        if (std::filesystem::is_directory(p))
            p /= "summary.json";
        ldn_run* run = nullptr;
        if (ldn_status s = ldn_run_load(p.string().c_str(), &run); s != LDN_OK)
            return report_failure("report", s);
        const ldn_status s = ldn_run_export(run, report_out.c_str(), kFormats.at(report_format));
        ldn_run_destroy(run);
        if (s != LDN_OK)
            return report_failure("report", s);
        std::printf("re-exported %s to %s\n", p.string().c_str(), report_out.c_str());
        return kExitOk;
    }

    if (*bench) {
        const ldn_run_config cfg = to_config(bn);
        const uint32_t d = max_days > 0 ? max_days : bn.warmup + bn.days;
        const std::string out =
            bench_out.empty() ? (std::filesystem::path(bn.output) / "bench.csv").string() : bench_out;
        if (ldn_status s = ldn_bench(&cfg, d, repeat, out.c_str()); s != LDN_OK)
            return report_failure("bench", s);
        std::printf("wrote %s (%u prefixes)\n", out.c_str(), d);
        return kExitOk;
    }
    return kExitUsage;
}
