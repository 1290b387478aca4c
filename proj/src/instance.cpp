#include "staybusy/instance.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace staybusy {

std::optional<std::int64_t> FamilyTag::param(const std::string& key) const {
    for (const auto& [k, v] : params) {
        if (k == key) return v;
    }
    return std::nullopt;
}

Work DagInstance::total_work() const {
    Work sum = 0;
    for (const auto& v : vertices) sum += v.weight;
    return sum;
}

Work DagInstance::max_weight() const {
    Work best = 0;
    for (const auto& v : vertices) best = std::max(best, v.weight);
    return best;
}

DagInstance make_instance(std::string name, const std::vector<Work>& weights,
                          std::vector<Edge> edges) {
    DagInstance instance;
    instance.name = std::move(name);
    instance.vertices.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        instance.vertices.push_back({static_cast<VertexId>(i), weights[i]});
    }
    std::sort(edges.begin(), edges.end());
    instance.edges = std::move(edges);
    return instance;
}

Adjacency::Adjacency(const DagInstance& instance)
    : parents(instance.size()), children(instance.size()) {
    const auto n = instance.size();
    for (const auto& e : instance.edges) {
        if (e.parent >= n || e.child >= n) continue;
        parents[e.child].push_back(e.parent);
        children[e.parent].push_back(e.child);
    }
    for (auto& list : parents) std::sort(list.begin(), list.end());
    for (auto& list : children) std::sort(list.begin(), list.end());
}

std::vector<VertexId> sources(const DagInstance& instance) {
    const Adjacency adj(instance);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < instance.size(); ++v) {
        if (adj.is_source(v)) out.push_back(v);
    }
    return out;
}

std::optional<std::vector<VertexId>> topological_order(const DagInstance& instance) {
    const Adjacency adj(instance);
    const auto n = instance.size();
    std::vector<std::size_t> indegree(n);
    for (VertexId v = 0; v < n; ++v) indegree[v] = adj.parents[v].size();

    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (VertexId v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    std::vector<VertexId> order;
    order.reserve(n);
    while (!ready.empty()) {
        const VertexId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (VertexId c : adj.children[v]) {
            if (--indegree[c] == 0) ready.push(c);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

}  // namespace staybusy
