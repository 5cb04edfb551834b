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
#include <vector>

#include "linkdyn/graph.hpp"

namespace linkdyn {

enum class GenModel { BaGrowth, RandomGrowth, MixedModel };
enum class Mechanism { PrefAttach, TriClose, Random };

std::string_view to_string(GenModel m);
std::string_view to_string(Mechanism m);
std::optional<GenModel> parse_gen_model(std::string_view s);
std::optional<Mechanism> parse_mechanism(std::string_view s);

struct GenConfig {
    GenModel model = GenModel::BaGrowth;
    std::uint32_t days = 18;
    std::uint32_t nodes_per_day = 500;
    /// Edges per arriving node (BA) or per-day edge budget factor
    /// (random and mixed models: m * nodes_per_day edge slots per day).
    std::uint32_t m = 2;
    /// Overrides m * nodes_per_day for the random and mixed models when set.
    std::optional<std::uint64_t> edges_per_day;
    double w_pa = 1.0 / 3.0;
    double w_tc = 1.0 / 3.0;
    double w_r = 1.0 / 3.0;
    std::uint64_t seed = 0;
    std::chrono::sys_days start_date{std::chrono::year{2009} / 6 / 1};

    /// Throws UsageError on m < 1, days < 1, nodes_per_day < 1, negative
    /// weights, or (MixedModel) weights not summing to 1 within 1e-12.
    void validate() const;
};

struct GenEdge {
    std::uint32_t u = 0; ///< caller
    std::uint32_t v = 0; ///< callee
    Mechanism mechanism = Mechanism::Random;
    /// Drawn mechanism had no legal move; recorded as Random.
    bool fallback = false;
    /// Part of the initial structure laid down before any mechanism runs.
    bool seed = false;
};

struct GenReport {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    std::uint64_t pref_attach = 0;
    std::uint64_t tri_close = 0;
    std::uint64_t random = 0;
    std::uint64_t fallbacks = 0;
    std::uint64_t seed_edges = 0;
    /// Requested edges that could not be placed (graph saturated).
    std::uint64_t truncated = 0;
    std::vector<std::string> warnings;
};

struct GeneratedStream {
    GenConfig config;
    /// edges[d] are day d's edges in emission order.
    std::vector<std::vector<GenEdge>> days;
    GenReport report;
};

/// Subscriber id of generator node `index`: "S%09d".
std::string synthetic_subscriber(std::uint32_t index);

GeneratedStream generate_ba(const GenConfig& cfg);
GeneratedStream generate_random_growth(const GenConfig& cfg);
GeneratedStream generate_mixed(const GenConfig& cfg);
/// Dispatches on cfg.model.
GeneratedStream generate(const GenConfig& cfg);

/// Writes one YYYYMMDD.csv per day plus ground_truth.csv into `out_dir`.
/// Throws IoError if the directory or a file cannot be written.
void write_dataset(const GeneratedStream& stream, const std::filesystem::path& out_dir);

} // namespace linkdyn
