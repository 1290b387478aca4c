#pragma once

#include <random>
#include <vector>

#include "staybusy/generators.hpp"
#include "staybusy/instance.hpp"
#include "staybusy/work_table.hpp"

namespace staybusy::fixtures {

// Two unit sources and a heavy source, r = 2.
inline DagInstance lemma_r2() { return lemma_worst_case(2, 2); }
inline DagInstance lemma_r4() { return lemma_worst_case(4, 4); }

// p1 runs the heavy vertex over slots 1-2; p2 runs the unit vertices.
inline WorkTable lemma_r2_optimal() {
    WorkTable t(3, 2, 2);
    t.slots[0] = {{1, 1}, {2, 1}};
    t.slots[1] = {{1, 2}};
    t.slots[2] = {{2, 2}};
    return t;
}

// Both unit vertices at slot 1, heavy vertex over slots 2-3.
inline WorkTable lemma_r2_nonoptimal() {
    WorkTable t(3, 2, 3);
    t.slots[0] = {{2, 1}, {3, 1}};
    t.slots[1] = {{1, 1}};
    t.slots[2] = {{1, 2}};
    return t;
}

// Four weight-3 vertices over slots 1-3, heavy vertex over 4-7 on p1.
inline WorkTable lemma_r4_nonoptimal() {
    WorkTable t(5, 4, 7);
    for (TimeSlot s = 4; s <= 7; ++s) t.slots[0].push_back({s, 1});
    for (VertexId v = 1; v <= 4; ++v)
        for (TimeSlot s = 1; s <= 3; ++s) t.slots[v].push_back({s, static_cast<ProcessorId>(v)});
    return t;
}

inline DagInstance chain(std::vector<Work> weights) {
    std::vector<Edge> edges;
    for (VertexId i = 1; i < weights.size(); ++i) edges.push_back({i - 1, i});
    return make_instance("chain", weights, edges);
}

// 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3 with weights 1, 10, 1, 1.
inline DagInstance diamond() {
    return make_instance("diamond", {1, 10, 1, 1}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

/// Random DAG on n vertices: edges only from lower to higher id, weights in
/// [0, max_w].
inline DagInstance random_small_dag(std::mt19937_64& rng, std::size_t n, Work max_w, int edge_pct) {
    std::vector<Work> weights(n);
    for (auto& w : weights) w = static_cast<Work>(rng() % static_cast<std::uint64_t>(max_w + 1));
    std::vector<Edge> edges;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            if (static_cast<int>(rng() % 100) < edge_pct) edges.push_back({a, b});
    return make_instance("random-small", weights, edges);
}

/// A mixed corpus across every generator family.
inline std::vector<DagInstance> family_corpus(std::uint64_t seed, std::size_t per_family) {
    std::mt19937_64 rng(seed);
    std::vector<DagInstance> out;
    for (std::size_t i = 0; i < per_family; ++i) {
        const int r = 2 + static_cast<int>(rng() % 7);
        const Work t = r * (1 + static_cast<Work>(rng() % 3));
        out.push_back(lemma_worst_case(r, t));
        out.push_back(uniform_sources(1 + static_cast<int>(rng() % 12), static_cast<Work>(rng() % 9)));
        out.push_back(random_disjoint_paths(rng(), 1 + static_cast<int>(rng() % 5), 5, 6));
        out.push_back(random_crossed_paths(rng(), 2 + static_cast<int>(rng() % 4), 5, 6,
                                           1 + static_cast<int>(rng() % 6)));
        out.push_back(random_branching_paths(rng(), 1 + static_cast<int>(rng() % 4), 4, 6,
                                             1 + static_cast<int>(rng() % 4)));
        out.push_back(random_layered_dag(rng(), 1 + static_cast<int>(rng() % 5),
                                         1 + static_cast<int>(rng() % 5), 7,
                                         Rational(static_cast<std::int64_t>(rng() % 5), 4)));
        WeightFn fn = ConstantWeight{1 + static_cast<Work>(rng() % 3)};
        if (i % 3 == 1) fn = CodimensionWeight{1};
        if (i % 3 == 2) fn = SeededWeight{rng(), 5};
        std::optional<LatticeSparsity> sparse;
        if (i % 2 == 1) sparse = LatticeSparsity{rng(), Rational(3, 4)};
        out.push_back(subset_lattice_atlas(1 + static_cast<int>(rng() % 5), fn, sparse));
    }
    return out;
}

}  // namespace staybusy::fixtures
