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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_map.h>

namespace linkdyn {

using DayIndex = std::int32_t;

/// Dense node identifier. Ids are handed out 0..|V|-1 in order of first
/// appearance and never reused.
struct NodeId {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const NodeId&) const = default;
};

struct NodeState {
    /// Triangles through this node, i.e. connected pairs among its neighbors.
    std::uint64_t triangles = 0;
    std::uint32_t degree = 0;
    DayIndex birth_day = 0;
};

enum class InsertStatus { Added, DuplicateEdge, SelfLoop };

/// Result of insert_edge. The *_pre fields are only meaningful when status
/// is Added and describe the graph strictly before the edge went in.
struct InsertOutcome {
    InsertStatus status = InsertStatus::SelfLoop;
    NodeId u;
    NodeId v;
    std::uint32_t k_u_pre = 0;
    std::uint32_t k_v_pre = 0;
    double cc_u_pre = 0.0;
    double cc_v_pre = 0.0;
    std::uint32_t common_neighbor_count_pre = 0;
    std::uint64_t degree_sum_pre = 0;

    bool added() const { return status == InsertStatus::Added; }
};

struct GlobalStats {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double density = 0.0;
    double avg_degree = 0.0;
    std::uint32_t max_degree = 0;
    double avg_cc = 0.0;
};

/// Cumulative undirected simple graph with incrementally maintained degree
/// and per-node triangle counts. Grows only: there is no edge removal.
///
/// Adjacency is stored as sorted neighbor vectors so that common-neighbor
/// queries are a walk over the smaller list with binary probes into the
/// larger one.
///
/// Single writer. Const member functions may run concurrently with each
/// other but not with intern_node / insert_edge.
class DynamicGraph {
public:
    DynamicGraph() = default;

    /// Returns the id for `original_id`, allocating the next dense id with
    /// the given birth day on first sight. The birth day of an existing node
    /// is never changed.
    NodeId intern_node(std::string_view original_id, DayIndex day);

    /// Looks up an id without allocating. Returns false if unseen.
    bool find_node(std::string_view original_id, NodeId& out) const;

    InsertOutcome insert_edge(NodeId u, NodeId v);

    bool has_edge(NodeId u, NodeId v) const;

    /// 2*T_v / (k_v*(k_v-1)) for k_v >= 2, else 0.
    double local_cc(NodeId v) const;

    std::uint32_t common_neighbor_count(NodeId u, NodeId v) const;

    /// Calls `fn(w)` for every w in N(u) ∩ N(v), ascending.
    template <typename Fn>
    void for_each_common_neighbor(NodeId u, NodeId v, Fn&& fn) const;

    GlobalStats global_stats() const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::uint64_t degree_sum() const { return 2 * static_cast<std::uint64_t>(edge_count_); }

    const NodeState& node(NodeId v) const;
    const std::string& original_id(NodeId v) const;
    std::uint32_t degree(NodeId v) const { return node(v).degree; }
    /// Number of nodes of each degree, indexed by degree. The last entry is
    /// non-zero unless the graph is empty.
    std::span<const std::uint64_t> degree_counts() const { return degree_counts_; }
    std::span<const std::uint32_t> neighbors(NodeId v) const;

    /// Cache hints for batch callers that know upcoming endpoints. Call
    /// prefetch_node well ahead, then prefetch_neighbors closer to use.
    void prefetch_node(NodeId v) const {
        if (v.value < nodes_.size())
            __builtin_prefetch(&nodes_[v.value]);
    }
    void prefetch_neighbors(NodeId v) const {
        if (v.value < nodes_.size() && !nodes_[v.value].adj.empty())
            __builtin_prefetch(&nodes_[v.value].adj.back());
    }

    /// Sum over nodes of T_v; always a multiple of 3.
    std::uint64_t triangle_sum() const;

private:
    void check(NodeId v) const;
    void bump_degree(NodeState& s);

    // State and neighbor list share one record so an insert touching a cold
    // node costs one miss rather than two.
    struct Record {
        NodeState state;
        std::vector<std::uint32_t> adj;
    };

    std::vector<Record> nodes_;
    std::vector<std::string> ids_; // kept apart from the hot per-node state
    std::vector<std::uint64_t> degree_counts_;
    absl::flat_hash_map<std::string, NodeId> index_;
    std::size_t edge_count_ = 0;
};

template <typename Fn>
void DynamicGraph::for_each_common_neighbor(NodeId u, NodeId v, Fn&& fn) const {
    check(u);
    check(v);
    const auto* small = &nodes_[u.value].adj;
    const auto* large = &nodes_[v.value].adj;
    if (small->size() > large->size())
        std::swap(small, large);
    auto lo = large->begin();
    for (std::uint32_t w : *small) {
        lo = std::lower_bound(lo, large->end(), w);
        if (lo == large->end())
            break;
        if (*lo == w)
            fn(NodeId{w});
    }
}

} // namespace linkdyn
