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

#include <doctest.h>

#include <algorithm>

#include "linkdyn/classifier.hpp"
#include "linkdyn/error.hpp"
#include "linkdyn/rng.hpp"
#include "oracles.hpp"

using namespace linkdyn;

namespace {

DynamicGraph build(std::uint32_t n, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> es) {
    DynamicGraph g;
    for (std::uint32_t i = 0; i < n; ++i)
        g.intern_node("v" + std::to_string(i), 0);
    for (auto [u, v] : es)
        g.insert_edge(NodeId{u}, NodeId{v});
    return g;
}

// Independent attachment probability from a naive adjacency.
double naive_p(const oracle::NaiveGraph& ref, std::uint32_t v) {
    const double k = static_cast<double>(ref.adj[v].size());
    const double total = 2.0 * static_cast<double>(ref.edges());
    return total - k > 0 ? k / (total - k) : 0.0;
}

} // namespace

TEST_CASE("pa_probability examples") {
    const DynamicGraph tri = build(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(pa_probability(tri, NodeId{0}) == 0.5);

    const DynamicGraph path = build(3, {{0, 1}, {1, 2}});
    CHECK(pa_probability(path, NodeId{1}) == 1.0);

    DynamicGraph fresh = build(3, {{0, 1}, {1, 2}});
    const NodeId z = fresh.intern_node("new", 1);
    CHECK(pa_probability(fresh, z) == 0.0);
}

TEST_CASE("pa_probability degenerate denominators") {
    bool undefined = false;
    CHECK(pa_probability(0, 0, DenominatorVariant::Exclusive, &undefined) == 0.0);
    CHECK(undefined);
    undefined = false;
    CHECK(pa_probability(3, 3, DenominatorVariant::Exclusive, &undefined) == 0.0);
    CHECK(undefined);
    undefined = true;
    CHECK(pa_probability(2, 8, DenominatorVariant::Exclusive, &undefined) == doctest::Approx(2.0 / 6.0));
    CHECK_FALSE(undefined);
    CHECK(pa_probability(2, 8, DenominatorVariant::Standard) == 0.25);
    CHECK(pa_probability(0, 0, DenominatorVariant::Standard, &undefined) == 0.0);
    CHECK(undefined);
}

TEST_CASE("classify_mechanism examples") {
    ClassifierConfig cfg;

    SUBCASE("closing a path at beta 0.5 is TC only") {
        DynamicGraph g = build(3, {{0, 1}, {1, 2}});
        cfg.beta = 0.5;
        const auto out = g.insert_edge(NodeId{0}, NodeId{2});
        const auto res = classify_mechanism(out, cfg);
        CHECK(res.tested_probability == doctest::Approx(1.0 / 3.0));
        CHECK_FALSE(res.label.is_pa);
        CHECK(res.label.is_tc);
        CHECK_FALSE(res.label.is_r);
    }
    SUBCASE("edge to a brand-new node is R") {
        DynamicGraph g = build(3, {{0, 1}, {1, 2}});
        const NodeId z = g.intern_node("z", 1);
        cfg.beta = 1e-12;
        const auto res = classify_mechanism(g.insert_edge(NodeId{0}, z), cfg);
        CHECK_FALSE(res.label.is_pa);
        CHECK_FALSE(res.label.is_tc);
        CHECK(res.label.is_r);
    }
    SUBCASE("new node calling a star center is PA") {
        DynamicGraph g = build(4, {{0, 1}, {0, 2}, {0, 3}});
        const NodeId d = g.intern_node("d", 1);
        cfg.beta = 0.3;
        const auto res = classify_mechanism(g.insert_edge(d, NodeId{0}), cfg);
        CHECK(res.tested_probability == 1.0);
        CHECK(res.label.is_pa);
        CHECK_FALSE(res.label.is_tc);
        CHECK_FALSE(res.label.is_r);
    }
    SUBCASE("PA and TC may both hold") {
        DynamicGraph g = build(3, {{0, 1}, {1, 2}});
        cfg.beta = 0.1;
        const auto res = classify_mechanism(g.insert_edge(NodeId{0}, NodeId{2}), cfg);
        CHECK(res.label.is_pa);
        CHECK(res.label.is_tc);
        CHECK_FALSE(res.label.is_r);
    }
}

TEST_CASE("endpoint policies") {
    // Caller is the hub, callee a leaf of another component.
    DynamicGraph h = build(6, {{0, 1}, {0, 2}, {0, 3}, {4, 5}});
    const auto pre = h.insert_edge(NodeId{0}, NodeId{4});
    // p(0) = 3/(8-3) = 0.6, p(4) = 1/(8-1) = 1/7
    ClassifierConfig cfg;
    cfg.beta = 0.5;
    cfg.pa_endpoint_policy = PaEndpointPolicy::CalleeOnly;
    CHECK_FALSE(classify_mechanism(pre, cfg).label.is_pa);
    cfg.pa_endpoint_policy = PaEndpointPolicy::Either;
    CHECK(classify_mechanism(pre, cfg).label.is_pa);
    CHECK(classify_mechanism(pre, cfg).tested_probability == doctest::Approx(0.6));
    cfg.pa_endpoint_policy = PaEndpointPolicy::Both;
    CHECK_FALSE(classify_mechanism(pre, cfg).label.is_pa);
    cfg.beta = 0.1;
    CHECK(classify_mechanism(pre, cfg).label.is_pa);
}

TEST_CASE("CalleeOnly is order sensitive, the other policies are not") {
    InsertOutcome pre;
    pre.status = InsertStatus::Added;
    pre.k_u_pre = 10;
    pre.k_v_pre = 1;
    pre.degree_sum_pre = 40;
    InsertOutcome swapped = pre;
    std::swap(swapped.k_u_pre, swapped.k_v_pre);

    ClassifierConfig cfg;
    cfg.beta = 0.2;
    CHECK(classify_mechanism(pre, cfg).label.is_pa != classify_mechanism(swapped, cfg).label.is_pa);
    for (auto pol : {PaEndpointPolicy::Either, PaEndpointPolicy::Both}) {
        cfg.pa_endpoint_policy = pol;
        CHECK(classify_mechanism(pre, cfg).label.is_pa ==
              classify_mechanism(swapped, cfg).label.is_pa);
    }
}

TEST_CASE("classify_degree") {
    DayAverages avg;
    avg.avg_degree = 1.5;
    CHECK(classify_degree(1, 1, avg) == DegreeClass::DLL);
    CHECK(classify_degree(3, 0, avg) == DegreeClass::DHL);
    CHECK(classify_degree(0, 3, avg) == DegreeClass::DHL);
    CHECK(classify_degree(2, 3, avg) == DegreeClass::DHH);
    DayAverages zero;
    CHECK(classify_degree(0, 0, zero) == DegreeClass::DHH);
    avg.avg_degree = 2.0;
    CHECK(classify_degree(2, 2, avg) == DegreeClass::DHH); // >= is high
}

TEST_CASE("classify_clustering") {
    DayAverages avg;
    avg.avg_cc = 0.2;
    CHECK(classify_clustering(1.0, 1.0, avg) == ClusteringClass::CHH);
    CHECK(classify_clustering(0.0, 0.0, avg) == ClusteringClass::CLL);
    CHECK(classify_clustering(0.3, 0.1, avg) == ClusteringClass::CHL);
    CHECK(classify_clustering(0.2, 0.2, avg) == ClusteringClass::CHH);
}

TEST_CASE("classify_age") {
    CHECK(classify_age(2, 1, 5, 3) == AgeClass::AJO);
    CHECK(classify_age(5, 5, 5, 3) == AgeClass::AJJ);
    CHECK(classify_age(0, 0, 10, 3) == AgeClass::AOO);
    CHECK(classify_age(0, 0, 0, 0) == AgeClass::AJJ);
    CHECK(classify_age(0, 1, 1, 0) == AgeClass::AJO);
}

TEST_CASE("snapshot_averages") {
    const DynamicGraph tri = build(3, {{0, 1}, {1, 2}, {2, 0}});
    auto a = snapshot_averages(tri, 3);
    CHECK(a.avg_degree == 2.0);
    CHECK(a.avg_cc == 1.0);
    CHECK(a.snapshot_day == 3);

    const DynamicGraph empty;
    a = snapshot_averages(empty, 0);
    CHECK(a.avg_degree == 0.0);
    CHECK(a.avg_cc == 0.0);

    const DynamicGraph path4 = build(4, {{0, 1}, {1, 2}, {2, 3}});
    a = snapshot_averages(path4, 1);
    CHECK(a.avg_degree == 1.5);
    CHECK(a.avg_cc == 0.0);
}

TEST_CASE("config validation and parsing") {
    ClassifierConfig cfg;
    CHECK(cfg.beta == 4.0e-6);
    CHECK(cfg.age_window_days == 3);
    CHECK(cfg.pa_endpoint_policy == PaEndpointPolicy::CalleeOnly);
    CHECK(cfg.denominator == DenominatorVariant::Exclusive);
    CHECK_NOTHROW(cfg.validate());
    cfg.beta = -0.1;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.beta = 1.5;
    CHECK_THROWS_AS(cfg.validate(), UsageError);

    for (auto p : {PaEndpointPolicy::CalleeOnly, PaEndpointPolicy::Either, PaEndpointPolicy::Both})
        CHECK(parse_pa_policy(to_string(p)) == p);
    for (auto d : {DenominatorVariant::Exclusive, DenominatorVariant::Standard})
        CHECK(parse_denominator(to_string(d)) == d);
    CHECK_FALSE(parse_pa_policy("caller").has_value());
}

TEST_CASE("properties over random growth streams") {
    Rng rng(4242);
    const double betas[] = {0.0, 1e-6, 4e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0};
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint32_t n = static_cast<std::uint32_t>(rng.between(3, 50));
        DynamicGraph g;
        oracle::NaiveGraph ref(n);
        for (std::uint32_t i = 0; i < n; ++i)
            g.intern_node("v" + std::to_string(i), 0);
        for (int step = 0; step < 150; ++step) {
            const auto u = static_cast<std::uint32_t>(rng.below(n));
            const auto v = static_cast<std::uint32_t>(rng.below(n));
            if (u == v || ref.adj[u].count(v))
                continue;
            const double pu = naive_p(ref, u), pv = naive_p(ref, v);
            const std::uint32_t common = ref.common(u, v);
            ref.add(u, v);
            const InsertOutcome pre = g.insert_edge(NodeId{u}, NodeId{v});
            REQUIRE(pre.added());

            ClassifierConfig cfg;
            REQUIRE(classify_mechanism(pre, cfg).tested_probability == doctest::Approx(pv).epsilon(1e-12));
            REQUIRE(classify_mechanism(pre, cfg).label.is_tc == (common >= 1));

            bool prev_pa = true;
            for (double beta : betas) {
                cfg.beta = beta;
                bool pa[3];
                int i = 0;
                for (auto pol : {PaEndpointPolicy::Both, PaEndpointPolicy::CalleeOnly,
                                 PaEndpointPolicy::Either}) {
                    cfg.pa_endpoint_policy = pol;
                    const auto res = classify_mechanism(pre, cfg);
                    REQUIRE(res.label.is_r == (!res.label.is_pa && !res.label.is_tc));
                    pa[i++] = res.label.is_pa;
                }
                // Both <= CalleeOnly <= Either
                REQUIRE((!pa[0] || pa[1]));
                REQUIRE((!pa[1] || pa[2]));
                REQUIRE(pa[1] == (pv >= beta));
                REQUIRE(pa[2] == (std::max(pu, pv) >= beta));
                // non-increasing in beta
                REQUIRE((prev_pa || !pa[1]));
                prev_pa = pa[1];
            }
            cfg.beta = 0.0;
            cfg.pa_endpoint_policy = PaEndpointPolicy::CalleeOnly;
            REQUIRE(classify_mechanism(pre, cfg).label.is_pa);
        }
    }
}

TEST_CASE("local classes are symmetric in their endpoints") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        DayAverages avg;
        avg.avg_degree = static_cast<double>(rng.below(8));
        avg.avg_cc = rng.unit();
        const auto ku = static_cast<std::uint32_t>(rng.below(10));
        const auto kv = static_cast<std::uint32_t>(rng.below(10));
        const double cu = rng.unit(), cv = rng.unit();
        const auto tu = static_cast<DayIndex>(rng.below(10));
        const auto tv = static_cast<DayIndex>(rng.below(10));
        const DayIndex te = 10;
        const auto w = static_cast<std::uint32_t>(rng.below(5));
        REQUIRE(classify_degree(ku, kv, avg) == classify_degree(kv, ku, avg));
        REQUIRE(classify_clustering(cu, cv, avg) == classify_clustering(cv, cu, avg));
        REQUIRE(classify_age(tu, tv, te, w) == classify_age(tv, tu, te, w));
    }
}
