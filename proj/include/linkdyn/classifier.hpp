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
#include <optional>
#include <string_view>

#include "linkdyn/graph.hpp"

namespace linkdyn {

/// Which endpoint probabilities the preferential-attachment test looks at.
/// CalleeOnly checks p(callee) only; Either passes if max(p_u, p_v) clears
/// the threshold; Both requires min(p_u, p_v) to clear it.
enum class PaEndpointPolicy { CalleeOnly, Either, Both };

/// Exclusive: k_v / (sum of all degrees - k_v), the degree mass of the
/// other nodes. Standard: k_v / 2|E|, the textbook BA normalization.
enum class DenominatorVariant { Exclusive, Standard };

enum class AveragesBasis { PrevDaySnapshot };

struct ClassifierConfig {
    double beta = 4.0e-6;
    PaEndpointPolicy pa_endpoint_policy = PaEndpointPolicy::CalleeOnly;
    std::uint32_t age_window_days = 3;
    DenominatorVariant denominator = DenominatorVariant::Exclusive;
    AveragesBasis averages_basis = AveragesBasis::PrevDaySnapshot;

    /// Throws UsageError if beta is outside [0, 1] or NaN.
    void validate() const;
};

std::string_view to_string(PaEndpointPolicy p);
std::string_view to_string(DenominatorVariant d);
std::optional<PaEndpointPolicy> parse_pa_policy(std::string_view s);
std::optional<DenominatorVariant> parse_denominator(std::string_view s);

struct MechanismLabel {
    bool is_pa = false;
    bool is_tc = false;
    bool is_r = false; ///< neither PA nor TC
};

enum class DegreeClass { DHH, DLL, DHL };
enum class ClusteringClass { CHH, CLL, CHL };
enum class AgeClass { AJJ, AOO, AJO };

struct LocalClasses {
    DegreeClass degree = DegreeClass::DHH;
    ClusteringClass clustering = ClusteringClass::CHH;
    AgeClass age = AgeClass::AJJ;
};

/// Thresholds for the local classes, frozen for a whole day.
struct DayAverages {
    double avg_degree = 0.0;
    double avg_cc = 0.0;
    DayIndex snapshot_day = 0;
};

/// Preferential-attachment probability of a node with degree `k` in a graph
/// whose degrees sum to `degree_sum`. A zero denominator yields 0 and sets
/// `*undefined` when given.
double pa_probability(std::uint64_t k, std::uint64_t degree_sum, DenominatorVariant variant,
                      bool* undefined = nullptr);

double pa_probability(const DynamicGraph& graph, NodeId v,
                      DenominatorVariant variant = DenominatorVariant::Exclusive);

struct MechanismResult {
    MechanismLabel label;
    /// The probability the active policy compared against beta (callee's,
    /// the max, or the min).
    double tested_probability = 0.0;
    bool probability_undefined = false;
};

/// PA / TC / R test for one Added edge, from its pre-insertion snapshot.
MechanismResult classify_mechanism(const InsertOutcome& pre, const ClassifierConfig& cfg);

DegreeClass classify_degree(std::uint32_t k_u, std::uint32_t k_v, const DayAverages& avg);
ClusteringClass classify_clustering(double cc_u, double cc_v, const DayAverages& avg);
/// young(x) <=> t_x >= t_e - window.
AgeClass classify_age(DayIndex t_u, DayIndex t_v, DayIndex t_e, std::uint32_t window);

LocalClasses classify_local(const InsertOutcome& pre, DayIndex birth_u, DayIndex birth_v,
                            DayIndex t_e, const DayAverages& avg, std::uint32_t window);

/// Averages of the graph as it stands, to be used for `day`. Call at the day
/// boundary before any of that day's events are applied.
DayAverages snapshot_averages(const DynamicGraph& graph, DayIndex day);

} // namespace linkdyn
