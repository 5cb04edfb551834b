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

#include "linkdyn/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "linkdyn/error.hpp"

namespace linkdyn {

void ClassifierConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw UsageError("beta must lie in [0, 1]");
}

std::string_view to_string(PaEndpointPolicy p) {
    switch (p) {
    case PaEndpointPolicy::CalleeOnly: return "callee";
    case PaEndpointPolicy::Either: return "either";
    case PaEndpointPolicy::Both: return "both";
    }
    return "?";
}

std::string_view to_string(DenominatorVariant d) {
    return d == DenominatorVariant::Exclusive ? "exclusive" : "standard";
}

std::optional<PaEndpointPolicy> parse_pa_policy(std::string_view s) {
    if (s == "callee" || s == "callee-only" || s == "CalleeOnly")
        return PaEndpointPolicy::CalleeOnly;
    if (s == "either" || s == "Either")
        return PaEndpointPolicy::Either;
    if (s == "both" || s == "Both")
        return PaEndpointPolicy::Both;
    return std::nullopt;
}

std::optional<DenominatorVariant> parse_denominator(std::string_view s) {
    if (s == "exclusive")
        return DenominatorVariant::Exclusive;
    if (s == "standard")
        return DenominatorVariant::Standard;
    return std::nullopt;
}

double pa_probability(std::uint64_t k, std::uint64_t degree_sum, DenominatorVariant variant,
                      bool* undefined) {
    const std::uint64_t denom =
        variant == DenominatorVariant::Exclusive ? degree_sum - std::min(k, degree_sum) : degree_sum;
    if (undefined)
        *undefined = denom == 0;
    if (denom == 0)
        return 0.0;
    return static_cast<double>(k) / static_cast<double>(denom);
}

double pa_probability(const DynamicGraph& graph, NodeId v, DenominatorVariant variant) {
    return pa_probability(graph.degree(v), graph.degree_sum(), variant);
}

MechanismResult classify_mechanism(const InsertOutcome& pre, const ClassifierConfig& cfg) {
    MechanismResult r;
    bool undef_u = false, undef_v = false;
    const double p_u = pa_probability(pre.k_u_pre, pre.degree_sum_pre, cfg.denominator, &undef_u);
    const double p_v = pa_probability(pre.k_v_pre, pre.degree_sum_pre, cfg.denominator, &undef_v);

    switch (cfg.pa_endpoint_policy) {
    case PaEndpointPolicy::CalleeOnly:
        r.tested_probability = p_v;
        r.probability_undefined = undef_v;
        break;
    case PaEndpointPolicy::Either:
        r.tested_probability = std::max(p_u, p_v);
        r.probability_undefined = undef_u || undef_v;
        break;
    case PaEndpointPolicy::Both:
        r.tested_probability = std::min(p_u, p_v);
        r.probability_undefined = undef_u || undef_v;
        break;
    }
    r.label.is_pa = r.tested_probability >= cfg.beta;
    r.label.is_tc = pre.common_neighbor_count_pre >= 1;
    r.label.is_r = !r.label.is_pa && !r.label.is_tc;
    return r;
}

DegreeClass classify_degree(std::uint32_t k_u, std::uint32_t k_v, const DayAverages& avg) {
    const bool hu = k_u >= avg.avg_degree;
    const bool hv = k_v >= avg.avg_degree;
    if (hu && hv)
        return DegreeClass::DHH;
    if (!hu && !hv)
        return DegreeClass::DLL;
    return DegreeClass::DHL;
}

ClusteringClass classify_clustering(double cc_u, double cc_v, const DayAverages& avg) {
    const bool hu = cc_u >= avg.avg_cc;
    const bool hv = cc_v >= avg.avg_cc;
    if (hu && hv)
        return ClusteringClass::CHH;
    if (!hu && !hv)
        return ClusteringClass::CLL;
    return ClusteringClass::CHL;
}

AgeClass classify_age(DayIndex t_u, DayIndex t_v, DayIndex t_e, std::uint32_t window) {
    const std::int64_t cutoff = static_cast<std::int64_t>(t_e) - window;
    const bool yu = t_u >= cutoff;
    const bool yv = t_v >= cutoff;
    if (yu && yv)
        return AgeClass::AJJ;
    if (!yu && !yv)
        return AgeClass::AOO;
    return AgeClass::AJO;
}

LocalClasses classify_local(const InsertOutcome& pre, DayIndex birth_u, DayIndex birth_v,
                            DayIndex t_e, const DayAverages& avg, std::uint32_t window) {
    return {classify_degree(pre.k_u_pre, pre.k_v_pre, avg),
            classify_clustering(pre.cc_u_pre, pre.cc_v_pre, avg),
            classify_age(birth_u, birth_v, t_e, window)};
}

DayAverages snapshot_averages(const DynamicGraph& graph, DayIndex day) {
    const GlobalStats g = graph.global_stats();
    return {g.avg_degree, g.avg_cc, day};
}

} // namespace linkdyn
