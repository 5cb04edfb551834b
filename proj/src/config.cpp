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

#include "linkdyn/config.hpp"

#include "linkdyn/error.hpp"

namespace linkdyn {

std::string_view to_string(ExportFormat f) {
    switch (f) {
    case ExportFormat::Csv: return "csv";
    case ExportFormat::Json: return "json";
    case ExportFormat::All: return "all";
    }
    return "?";
}

std::optional<ExportFormat> parse_export_format(std::string_view s) {
    if (s == "csv")
        return ExportFormat::Csv;
    if (s == "json")
        return ExportFormat::Json;
    if (s == "all")
        return ExportFormat::All;
    return std::nullopt;
}

void RunConfig::validate() const {
    classifier.validate();
    if (warmup_days + study_days == 0)
        throw UsageError("nothing to do: warmup and study days are both 0");
}

} // namespace linkdyn
