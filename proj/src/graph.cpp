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

#include "linkdyn/graph.hpp"

#include <cassert>
#include <stdexcept>

namespace linkdyn {

NodeId DynamicGraph::intern_node(std::string_view original_id, DayIndex day) {
    const absl::string_view key(original_id.data(), original_id.size());
    if (auto it = index_.find(key); it != index_.end())
        return it->second;
    NodeId id{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.emplace_back().state.birth_day = day;
    if (degree_counts_.empty())
        degree_counts_.push_back(0);
    ++degree_counts_[0];
    ids_.emplace_back(original_id);
    index_.emplace(std::string(original_id), id);
    return id;
}

bool DynamicGraph::find_node(std::string_view original_id, NodeId& out) const {
    auto it = index_.find(absl::string_view(original_id.data(), original_id.size()));
    if (it == index_.end())
        return false;
    out = it->second;
    return true;
}

void DynamicGraph::check(NodeId v) const {
    // Ids only come from intern_node; anything else is a programming error.
    if (v.value >= nodes_.size())
        throw std::out_of_range("unknown node id " + std::to_string(v.value));
}

const NodeState& DynamicGraph::node(NodeId v) const {
    check(v);
    return nodes_[v.value].state;
}

const std::string& DynamicGraph::original_id(NodeId v) const {
    check(v);
    return ids_[v.value];
}

std::span<const std::uint32_t> DynamicGraph::neighbors(NodeId v) const {
    check(v);
    return nodes_[v.value].adj;
}

bool DynamicGraph::has_edge(NodeId u, NodeId v) const {
    check(u);
    check(v);
    const auto& a = nodes_[u.value].adj;
    const auto& b = nodes_[v.value].adj;
    if (a.size() <= b.size())
        return std::binary_search(a.begin(), a.end(), v.value);
    return std::binary_search(b.begin(), b.end(), u.value);
}

double DynamicGraph::local_cc(NodeId v) const {
    const NodeState& s = node(v);
    if (s.degree < 2)
        return 0.0;
    const double k = s.degree;
    return 2.0 * static_cast<double>(s.triangles) / (k * (k - 1.0));
}

std::uint32_t DynamicGraph::common_neighbor_count(NodeId u, NodeId v) const {
    std::uint32_t c = 0;
    for_each_common_neighbor(u, v, [&c](NodeId) { ++c; });
    return c;
}

InsertOutcome DynamicGraph::insert_edge(NodeId u, NodeId v) {
    check(u);
    check(v);
    InsertOutcome out;
    out.u = u;
    out.v = v;
    if (u == v) {
        out.status = InsertStatus::SelfLoop;
        return out;
    }
    auto& adj_u = nodes_[u.value].adj;
    auto& adj_v = nodes_[v.value].adj;
    auto pos_u = std::lower_bound(adj_u.begin(), adj_u.end(), v.value);
    if (pos_u != adj_u.end() && *pos_u == v.value) {
        out.status = InsertStatus::DuplicateEdge;
        return out;
    }

    out.status = InsertStatus::Added;
    out.k_u_pre = nodes_[u.value].state.degree;
    out.k_v_pre = nodes_[v.value].state.degree;
    out.cc_u_pre = local_cc(u);
    out.cc_v_pre = local_cc(v);
    out.degree_sum_pre = degree_sum();

    std::uint32_t common = 0;
    for_each_common_neighbor(u, v, [&](NodeId w) {
        ++nodes_[w.value].state.triangles;
        ++common;
    });
    out.common_neighbor_count_pre = common;

    adj_u.insert(pos_u, v.value);
    adj_v.insert(std::lower_bound(adj_v.begin(), adj_v.end(), u.value), u.value);
    auto& su = nodes_[u.value].state;
    auto& sv = nodes_[v.value].state;
    bump_degree(su);
    bump_degree(sv);
    su.triangles += common;
    sv.triangles += common;
    ++edge_count_;
    assert(su.degree == adj_u.size() && sv.degree == adj_v.size());
    return out;
}

void DynamicGraph::bump_degree(NodeState& s) {
    --degree_counts_[s.degree];
    if (++s.degree == degree_counts_.size())
        degree_counts_.push_back(0);
    ++degree_counts_[s.degree];
}

GlobalStats DynamicGraph::global_stats() const {
    GlobalStats g;
    g.n_nodes = nodes_.size();
    g.n_edges = edge_count_;
    if (g.n_nodes == 0)
        return g;
    const double n = static_cast<double>(g.n_nodes);
    const double e = static_cast<double>(g.n_edges);
    g.avg_degree = 2.0 * e / n;
    if (g.n_nodes >= 2)
        g.density = 2.0 * e / (n * (n - 1.0));
    // Degrees only grow, so the top bucket is always occupied.
    g.max_degree = static_cast<std::uint32_t>(degree_counts_.size() - 1);
    double cc_sum = 0.0;
    for (const auto& r : nodes_) {
        const NodeState& s = r.state;
        if (s.degree >= 2) {
            const double k = s.degree;
            cc_sum += 2.0 * static_cast<double>(s.triangles) / (k * (k - 1.0));
        }
    }
    g.avg_cc = cc_sum / n;
    return g;
}

std::uint64_t DynamicGraph::triangle_sum() const {
    std::uint64_t s = 0;
    for (const auto& r : nodes_)
        s += r.state.triangles;
    return s;
}

} // namespace linkdyn
