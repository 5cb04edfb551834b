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

#include "linkdyn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "linkdyn/error.hpp"
#include "linkdyn/ingest.hpp"
#include "linkdyn/rng.hpp"

namespace linkdyn {

namespace fs = std::filesystem;

std::string_view to_string(GenModel m) {
    switch (m) {
    case GenModel::BaGrowth: return "ba";
    case GenModel::RandomGrowth: return "random";
    case GenModel::MixedModel: return "mixed";
    }
    return "?";
}

std::string_view to_string(Mechanism m) {
    switch (m) {
    case Mechanism::PrefAttach: return "PrefAttach";
    case Mechanism::TriClose: return "TriClose";
    case Mechanism::Random: return "Random";
    }
    return "?";
}

std::optional<GenModel> parse_gen_model(std::string_view s) {
    if (s == "ba")
        return GenModel::BaGrowth;
    if (s == "random")
        return GenModel::RandomGrowth;
    if (s == "mixed")
        return GenModel::MixedModel;
    return std::nullopt;
}

std::optional<Mechanism> parse_mechanism(std::string_view s) {
    if (s == "PrefAttach")
        return Mechanism::PrefAttach;
    if (s == "TriClose")
        return Mechanism::TriClose;
    if (s == "Random")
        return Mechanism::Random;
    return std::nullopt;
}

void GenConfig::validate() const {
    if (m < 1)
        throw UsageError("m must be at least 1");
    if (days < 1)
        throw UsageError("days must be at least 1");
    if (nodes_per_day < 1)
        throw UsageError("nodes_per_day must be at least 1");
    if (model == GenModel::MixedModel) {
        if (!(w_pa >= 0.0 && w_tc >= 0.0 && w_r >= 0.0))
            throw UsageError("mixture weights must be non-negative");
        if (std::abs(w_pa + w_tc + w_r - 1.0) > 1e-12)
            throw UsageError("mixture weights must sum to 1");
    }
}

std::string synthetic_subscriber(std::uint32_t index) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "S%09u", index);
    return buf;
}

namespace {

constexpr int kMaxDraws = 64;

// Graph under construction plus the bookkeeping the samplers need.
class Builder {
public:
    explicit Builder(GeneratedStream& out) : out_(out) {}

    std::uint32_t add_node(DayIndex day) {
        const auto id = static_cast<std::uint32_t>(graph_.node_count());
        graph_.intern_node(synthetic_subscriber(id), day);
        mark_.push_back(0);
        return id;
    }

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(graph_.node_count()); }
    std::uint64_t edge_count() const { return graph_.edge_count(); }

    bool adjacent(std::uint32_t u, std::uint32_t v) const {
        return graph_.has_edge(NodeId{u}, NodeId{v});
    }

    void add_edge(std::uint32_t day, std::uint32_t u, std::uint32_t v, Mechanism mech,
                  bool fallback = false, bool seed = false) {
        graph_.insert_edge(NodeId{u}, NodeId{v});
        if (graph_.degree(NodeId{u}) == 1)
            active_.push_back(u);
        if (graph_.degree(NodeId{v}) == 1)
            active_.push_back(v);
        ends_.push_back(u);
        ends_.push_back(v);
        out_.days[day].push_back({u, v, mech, fallback, seed});
        auto& r = out_.report;
        ++r.edges;
        r.fallbacks += fallback;
        r.seed_edges += seed;
        switch (mech) {
        case Mechanism::PrefAttach: ++r.pref_attach; break;
        case Mechanism::TriClose: ++r.tri_close; break;
        case Mechanism::Random: ++r.random; break;
        }
    }

    /// Degree-proportional draw (denominator 2|E|).
    std::uint32_t roulette(Rng& rng) const { return ends_[rng.below(ends_.size())]; }

    std::uint64_t open_pairs() const {
        const std::uint64_t n = node_count();
        return n * (n - 1) / 2 - edge_count();
    }

    /// All currently non-adjacent pairs (u < v), ascending.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> list_open_pairs() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        const std::uint32_t n = node_count();
        for (std::uint32_t u = 0; u < n; ++u) {
            auto nb = graph_.neighbors(NodeId{u});
            auto it = std::upper_bound(nb.begin(), nb.end(), u);
            for (std::uint32_t v = u + 1; v < n; ++v) {
                if (it != nb.end() && *it == v) {
                    ++it;
                    continue;
                }
                pairs.emplace_back(u, v);
            }
        }
        return pairs;
    }

    /// Uniform non-adjacent ordered pair; false if the graph is complete.
    bool random_pair(Rng& rng, std::uint32_t& u, std::uint32_t& v) const {
        const std::uint64_t open = open_pairs();
        if (open == 0)
            return false;
        const std::uint64_t n = node_count();
        if (open * 2 >= n * (n - 1) / 2) {
            while (true) {
                u = static_cast<std::uint32_t>(rng.below(n));
                v = static_cast<std::uint32_t>(rng.below(n - 1));
                if (v >= u)
                    ++v;
                if (!adjacent(u, v))
                    return true;
            }
        }
        auto pairs = list_open_pairs();
        auto [a, b] = pairs[rng.below(pairs.size())];
        if (rng.below(2) == 0)
            std::swap(a, b);
        u = a;
        v = b;
        return true;
    }

    /// Nodes two hops from u that are not u and not adjacent to u, ascending.
    std::vector<std::uint32_t> closing_candidates(std::uint32_t u) {
        ++stamp_;
        mark_[u] = stamp_;
        for (std::uint32_t x : graph_.neighbors(NodeId{u}))
            mark_[x] = stamp_;
        std::vector<std::uint32_t> cand;
        for (std::uint32_t x : graph_.neighbors(NodeId{u})) {
            for (std::uint32_t w : graph_.neighbors(NodeId{x})) {
                if (mark_[w] != stamp_) {
                    mark_[w] = stamp_;
                    cand.push_back(w);
                }
            }
        }
        std::sort(cand.begin(), cand.end());
        return cand;
    }

    /// Uniform node with a non-empty set of closing candidates, then a
    /// uniform candidate. False if no open wedge exists anywhere.
    bool triadic_pair(Rng& rng, std::uint32_t& u, std::uint32_t& w) {
        if (active_.empty())
            return false;
        for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
            u = active_[rng.below(active_.size())];
            auto cand = closing_candidates(u);
            if (!cand.empty()) {
                w = cand[rng.below(cand.size())];
                return true;
            }
        }
        // Rejection kept failing: find the eligible set exactly.
        std::vector<std::uint32_t> eligible;
        for (std::uint32_t x : active_)
            if (!closing_candidates(x).empty())
                eligible.push_back(x);
        if (eligible.empty())
            return false;
        std::sort(eligible.begin(), eligible.end());
        u = eligible[rng.below(eligible.size())];
        auto cand = closing_candidates(u);
        w = cand[rng.below(cand.size())];
        return true;
    }

    /// Uniform caller, degree-proportional callee, not adjacent.
    bool preferential_pair(Rng& rng, std::uint32_t& u, std::uint32_t& v) const {
        if (ends_.empty() || node_count() < 2)
            return false;
        for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
            u = static_cast<std::uint32_t>(rng.below(node_count()));
            v = roulette(rng);
            if (u != v && !adjacent(u, v))
                return true;
        }
        return false;
    }

private:
    GeneratedStream& out_;
    DynamicGraph graph_;
    std::vector<std::uint32_t> ends_;
    std::vector<std::uint32_t> active_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
};

GeneratedStream start(const GenConfig& cfg, GenModel expected) {
    if (cfg.model != expected)
        throw UsageError("generator called with a config for model " +
                         std::string(to_string(cfg.model)));
    cfg.validate();
    GeneratedStream s;
    s.config = cfg;
    s.days.resize(cfg.days);
    return s;
}

std::uint64_t slots_per_day(const GenConfig& cfg) {
    return cfg.edges_per_day ? *cfg.edges_per_day
                             : static_cast<std::uint64_t>(cfg.m) * cfg.nodes_per_day;
}

} // namespace

GeneratedStream generate_ba(const GenConfig& cfg) {
    GeneratedStream s = start(cfg, GenModel::BaGrowth);
    Builder b(s);

    // Seed clique on m+1 nodes.
    for (std::uint32_t i = 0; i <= cfg.m; ++i)
        b.add_node(0);
    for (std::uint32_t i = 0; i <= cfg.m; ++i)
        for (std::uint32_t j = i + 1; j <= cfg.m; ++j)
            b.add_edge(0, j, i, Mechanism::PrefAttach, false, true);

    std::vector<std::uint32_t> targets;
    for (std::uint32_t day = 0; day < cfg.days; ++day) {
        Rng rng = Rng::stream(cfg.seed, day);
        for (std::uint32_t k = 0; k < cfg.nodes_per_day; ++k) {
            // Targets are drawn against the graph before the newcomer links in.
            targets.clear();
            while (targets.size() < cfg.m) {
                std::uint32_t t = b.roulette(rng);
                if (std::find(targets.begin(), targets.end(), t) == targets.end())
                    targets.push_back(t);
            }
            const std::uint32_t x = b.add_node(static_cast<DayIndex>(day));
            for (std::uint32_t t : targets)
                b.add_edge(day, x, t, Mechanism::PrefAttach);
        }
    }
    s.report.nodes = b.node_count();
    return s;
}

GeneratedStream generate_random_growth(const GenConfig& cfg) {
    GeneratedStream s = start(cfg, GenModel::RandomGrowth);
    Builder b(s);
    const std::uint64_t per_day = slots_per_day(cfg);

    for (std::uint32_t day = 0; day < cfg.days; ++day) {
        Rng rng = Rng::stream(cfg.seed, day);
        for (std::uint32_t k = 0; k < cfg.nodes_per_day; ++k)
            b.add_node(static_cast<DayIndex>(day));

        std::uint64_t want = per_day;
        const std::uint64_t open = b.open_pairs();
        if (want >= open) {
            if (want > open) {
                s.report.truncated += want - open;
                s.report.warnings.push_back("day " + std::to_string(day) + ": requested " +
                                            std::to_string(want) + " edges, only " +
                                            std::to_string(open) + " non-adjacent pairs left");
            }
            auto pairs = b.list_open_pairs();
            for (std::size_t i = pairs.size(); i > 1; --i)
                std::swap(pairs[i - 1], pairs[rng.below(i)]);
            for (auto [u, v] : pairs)
                b.add_edge(day, u, v, Mechanism::Random);
            continue;
        }
        for (std::uint64_t e = 0; e < want; ++e) {
            std::uint32_t u = 0, v = 0;
            b.random_pair(rng, u, v);
            b.add_edge(day, u, v, Mechanism::Random);
        }
    }
    s.report.nodes = b.node_count();
    return s;
}

GeneratedStream generate_mixed(const GenConfig& cfg) {
    GeneratedStream s = start(cfg, GenModel::MixedModel);
    Builder b(s);
    const std::uint64_t per_day = slots_per_day(cfg);

    for (std::uint32_t day = 0; day < cfg.days; ++day) {
        Rng rng = Rng::stream(cfg.seed, day);
        const std::uint32_t first = b.node_count();
        for (std::uint32_t k = 0; k < cfg.nodes_per_day; ++k)
            b.add_node(static_cast<DayIndex>(day));

        if (day == 0) {
            // Seed ring over the first day's nodes (a single edge or path
            // when there are fewer than three).
            const std::uint32_t n = cfg.nodes_per_day;
            for (std::uint32_t i = 0; i + 1 < n; ++i)
                b.add_edge(0, first + i, first + i + 1, Mechanism::Random, false, true);
            if (n >= 3)
                b.add_edge(0, first + n - 1, first, Mechanism::Random, false, true);
        }

        for (std::uint64_t slot = 0; slot < per_day; ++slot) {
            const double r = rng.unit();
            Mechanism drawn = r < cfg.w_pa                ? Mechanism::PrefAttach
                              : r < cfg.w_pa + cfg.w_tc ? Mechanism::TriClose
                                                        : Mechanism::Random;
            std::uint32_t u = 0, v = 0;
            bool ok = false;
            if (drawn == Mechanism::PrefAttach)
                ok = b.preferential_pair(rng, u, v);
            else if (drawn == Mechanism::TriClose)
                ok = b.triadic_pair(rng, u, v);
            if (ok) {
                b.add_edge(day, u, v, drawn);
                continue;
            }
            const bool fallback = drawn != Mechanism::Random;
            if (!b.random_pair(rng, u, v)) {
                ++s.report.truncated;
                continue;
            }
            b.add_edge(day, u, v, Mechanism::Random, fallback);
        }
    }
    if (s.report.truncated > 0)
        s.report.warnings.push_back(std::to_string(s.report.truncated) +
                                    " edge slots skipped: graph saturated");
    s.report.nodes = b.node_count();
    return s;
}

GeneratedStream generate(const GenConfig& cfg) {
    switch (cfg.model) {
    case GenModel::BaGrowth: return generate_ba(cfg);
    case GenModel::RandomGrowth: return generate_random_growth(cfg);
    case GenModel::MixedModel: return generate_mixed(cfg);
    }
    throw UsageError("unknown generator model");
}

void write_dataset(const GeneratedStream& stream, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory " + out_dir.string());

    // Cosmetic fields (kind, duration) come from their own stream so that
    // they never perturb the structural draws.
    Rng cosmetic = Rng::stream(stream.config.seed, 0xC0FFEEULL << 32);
    std::uint64_t sequence = 0;

    std::ostringstream truth;
    truth << "day,u,v,mechanism\n";
    for (std::size_t day = 0; day < stream.days.size(); ++day) {
        const auto date = stream.config.start_date + std::chrono::days{day};
        const std::string iso = format_iso_date(date);
        std::string buf;
        buf.reserve(stream.days[day].size() * 40);
        for (const GenEdge& e : stream.days[day]) {
            const bool call = sequence++ % 2 == 0;
            const std::uint64_t duration = call ? cosmetic.between(1, 600) : 0;
            const std::string u = synthetic_subscriber(e.u);
            const std::string v = synthetic_subscriber(e.v);
            buf += iso;
            buf += ';';
            buf += u;
            buf += ';';
            buf += v;
            buf += call ? ";CALL;" : ";SMS;";
            buf += std::to_string(duration);
            buf += '\n';
            truth << day << ',' << u << ',' << v << ',' << to_string(e.mechanism) << '\n';
        }
        const fs::path file = out_dir / (format_compact_date(date) + ".csv");
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        if (!out || !(out << buf))
            throw IoError("cannot write " + file.string());
    }
    const fs::path truth_file = out_dir / "ground_truth.csv";
    std::ofstream out(truth_file, std::ios::binary | std::ios::trunc);
    if (!out || !(out << truth.str()))
        throw IoError("cannot write " + truth_file.string());
}

} // namespace linkdyn
