#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace staybusy {

using VertexId = std::uint32_t;
using Work = std::int64_t;

struct Vertex {
    VertexId id = 0;
    Work weight = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    VertexId parent = 0;
    VertexId child = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Generator provenance carried alongside an instance. Parameters keep
/// insertion order so serialized files stay byte-stable.
struct FamilyTag {
    std::string family;
    std::vector<std::pair<std::string, std::int64_t>> params;
    std::optional<std::uint64_t> seed;

    std::optional<std::int64_t> param(const std::string& key) const;

    friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

/// Vertex-weighted DAG. Vertex i is expected to carry id i; validate_instance
/// reports anything else.
struct DagInstance {
    std::string name;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::optional<FamilyTag> family;

    std::size_t size() const { return vertices.size(); }
    Work weight(VertexId v) const { return vertices[v].weight; }
    Work total_work() const;
    Work max_weight() const;

    friend bool operator==(const DagInstance&, const DagInstance&) = default;
};

/// Build an instance from a weight list and an edge list; edges are sorted.
DagInstance make_instance(std::string name, const std::vector<Work>& weights,
                          std::vector<Edge> edges = {});

/// Parent and child lists, each sorted ascending.
struct Adjacency {
    std::vector<std::vector<VertexId>> parents;
    std::vector<std::vector<VertexId>> children;

    explicit Adjacency(const DagInstance& instance);

    bool is_source(VertexId v) const { return parents[v].empty(); }
};

std::vector<VertexId> sources(const DagInstance& instance);

/// Kahn's algorithm, smallest ready id first. Empty optional on a cycle.
std::optional<std::vector<VertexId>> topological_order(const DagInstance& instance);

}  // namespace staybusy
