#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/rational.hpp"

namespace staybusy {

enum class Family {
    lemma_worst,
    uniform_sources,
    disjoint_paths,
    crossed_paths,
    branching_paths,
    random_layered,
    subset_lattice,
};

/// LEMMA_WORST, UNIFORM_SOURCES, ... as written in instance files.
std::string family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

/// r+1 isolated sources: vertex 0 weighs t*, vertices 1..r weigh (r-1)t*/r.
/// Throws std::invalid_argument unless r >= 2, t* >= 1 and r divides t*.
DagInstance lemma_worst_case(int r, Work t_star);

/// m isolated vertices of weight w.
DagInstance uniform_sources(int m, Work w);

/// One chain per entry of `weights`; chain i is laid out on consecutive ids.
struct PathsSpec {
    std::vector<std::vector<Work>> weights;
};

/// `lengths[i]` must equal `weights[i].size()`.
DagInstance disjoint_paths(const std::vector<std::size_t>& lengths, const PathsSpec& spec);

/// Base chains plus extra edges between any of their vertices (base ids).
/// Throws std::invalid_argument if an edge is out of range, duplicated or
/// closes a cycle.
DagInstance crossed_paths(const PathsSpec& base, const std::vector<Edge>& cross_edges);

/// A chain hanging off an existing base vertex.
struct BranchSpec {
    VertexId attach = 0;
    std::vector<Work> weights;
};

/// Base chains plus branch chains whose first vertex is a child of `attach`.
DagInstance branching_paths(const PathsSpec& base, const std::vector<BranchSpec>& branches);

/// Layered DAG with edges only between adjacent layers; each edge appears
/// with probability `edge_prob` and every vertex past the first layer gets at
/// least one parent. Weights are uniform in [0, max_w].
DagInstance random_layered_dag(std::uint64_t seed, int layers, int width, Work max_w,
                               Rational edge_prob);

// Weight of a subset-lattice vertex as a function of its subset.
struct ConstantWeight {
    Work value = 1;
};
/// scale * (k - |subset|).
struct CodimensionWeight {
    Work scale = 1;
};
struct SeededWeight {
    std::uint64_t seed = 0;
    Work max = 1;
};
using WeightFn = std::variant<ConstantWeight, CodimensionWeight, SeededWeight>;

/// const:<c>, codim:<scale>, random:<seed>:<max>
WeightFn parse_weight_fn(const std::string& text);
std::string weight_fn_name(const WeightFn& fn);

/// Optional sparsification: each non-root subset is kept with probability
/// `keep`, and only if some parent subset was kept.
struct LatticeSparsity {
    std::uint64_t seed = 0;
    Rational keep{1};
};

/// Subsets of a k-element set ordered by bitmask, the empty set as the only
/// source, edges adding one element. Full lattice: 2^k vertices and
/// k*2^(k-1) edges. Throws std::invalid_argument unless 1 <= k <= 16.
DagInstance subset_lattice_atlas(int k, const WeightFn& weight_fn,
                                 const std::optional<LatticeSparsity>& sparsity = std::nullopt);

// Random members of the path families, used by the property suites.
DagInstance random_disjoint_paths(std::uint64_t seed, int paths, int max_length, Work max_w);
DagInstance random_crossed_paths(std::uint64_t seed, int paths, int max_length, Work max_w,
                                 int cross_edges);
DagInstance random_branching_paths(std::uint64_t seed, int paths, int max_length, Work max_w,
                                   int branches);

}  // namespace staybusy
