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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>

#include "linkdyn/classifier.hpp"

namespace linkdyn {

enum class ExportFormat { Csv, Json, All };

std::string_view to_string(ExportFormat f);
std::optional<ExportFormat> parse_export_format(std::string_view s);

/// Everything one analyze run needs. Defaults:
/// three build-only days, fifteen analyzed days, beta = 4e-6, 3-day window.
struct RunConfig {
    std::filesystem::path input_dir;
    std::filesystem::path out_dir;
    std::size_t warmup_days = 3;
    std::size_t study_days = 15;
    ClassifierConfig classifier;
    ExportFormat format = ExportFormat::All;
    /// Write measured per-day wall time into the exports. Off by default so
    /// that repeated runs produce byte-identical files.
    bool include_timing = false;

    void validate() const;
};

} // namespace linkdyn
