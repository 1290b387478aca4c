#include "staybusy/generators.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace staybusy {

namespace {

// Portable draw in [lo, hi]; std::uniform_int_distribution is not specified
// bit-for-bit across standard libraries.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

bool bernoulli(std::mt19937_64& rng, const Rational& p) {
    if (p.num() <= 0) return false;
    if (p.num() >= p.den()) return true;
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p.den())) < p.num();
}

FamilyTag tag(Family family, std::vector<std::pair<std::string, std::int64_t>> params,
              std::optional<std::uint64_t> seed = std::nullopt) {
    return FamilyTag{family_name(family), std::move(params), seed};
}

void require_acyclic(const DagInstance& instance, const char* what) {
    if (!topological_order(instance)) {
        throw std::invalid_argument(std::string(what) + ": added edges introduce a cycle");
    }
}

// Chains laid out on consecutive ids; returns the first id of each chain.
std::vector<VertexId> lay_out_chains(const PathsSpec& spec, std::vector<Work>& weights,
                                     std::vector<Edge>& edges) {
    std::vector<VertexId> heads;
    for (const auto& chain : spec.weights) {
        heads.push_back(static_cast<VertexId>(weights.size()));
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const auto id = static_cast<VertexId>(weights.size());
            if (chain[i] < 0) throw std::invalid_argument("path weights must be nonnegative");
            weights.push_back(chain[i]);
            if (i > 0) edges.push_back({id - 1, id});
        }
    }
    return heads;
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::lemma_worst: return "LEMMA_WORST";
        case Family::uniform_sources: return "UNIFORM_SOURCES";
        case Family::disjoint_paths: return "DISJOINT_PATHS";
        case Family::crossed_paths: return "CROSSED_PATHS";
        case Family::branching_paths: return "BRANCHING_PATHS";
        case Family::random_layered: return "RANDOM_LAYERED";
        case Family::subset_lattice: return "SUBSET_LATTICE";
    }
    return "UNKNOWN";
}

std::optional<Family> parse_family(std::string_view name) {
    for (auto f : {Family::lemma_worst, Family::uniform_sources, Family::disjoint_paths,
                   Family::crossed_paths, Family::branching_paths, Family::random_layered,
                   Family::subset_lattice}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

DagInstance lemma_worst_case(int r, Work t_star) {
    if (r < 2) throw std::invalid_argument("lemma_worst_case: r must be >= 2");
    if (t_star < 1 || t_star % r != 0) {
        throw std::invalid_argument("lemma_worst_case: t* must be a positive multiple of r");
    }
    std::vector<Work> weights{t_star};
    weights.resize(static_cast<std::size_t>(r) + 1, (r - 1) * (t_star / r));
    auto instance = make_instance("lemma-r" + std::to_string(r) + "-t" + std::to_string(t_star),
                                  weights);
    instance.family = tag(Family::lemma_worst, {{"r", r}, {"tstar", t_star}});
    return instance;
}

DagInstance uniform_sources(int m, Work w) {
    if (m < 1) throw std::invalid_argument("uniform_sources: m must be >= 1");
    if (w < 0) throw std::invalid_argument("uniform_sources: w must be >= 0");
    auto instance = make_instance("uniform-m" + std::to_string(m) + "-w" + std::to_string(w),
                                  std::vector<Work>(static_cast<std::size_t>(m), w));
    instance.family = tag(Family::uniform_sources, {{"m", m}, {"w", w}});
    return instance;
}

DagInstance disjoint_paths(const std::vector<std::size_t>& lengths, const PathsSpec& spec) {
    if (lengths.size() != spec.weights.size()) {
        throw std::invalid_argument("disjoint_paths: " + std::to_string(lengths.size()) +
                                    " lengths for " + std::to_string(spec.weights.size()) + " chains");
    }
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] != spec.weights[i].size()) {
            throw std::invalid_argument("disjoint_paths: chain " + std::to_string(i) +
                                        " length does not match its weights");
        }
    }
    std::vector<Work> weights;
    std::vector<Edge> edges;
    lay_out_chains(spec, weights, edges);
    auto instance = make_instance("disjoint-paths-" + std::to_string(lengths.size()), weights, edges);
    instance.family = tag(Family::disjoint_paths, {{"paths", static_cast<std::int64_t>(lengths.size())},
                                                   {"vertices", static_cast<std::int64_t>(weights.size())}});
    return instance;
}

DagInstance crossed_paths(const PathsSpec& base, const std::vector<Edge>& cross_edges) {
    std::vector<Work> weights;
    std::vector<Edge> edges;
    lay_out_chains(base, weights, edges);
    std::set<Edge> present(edges.begin(), edges.end());
    for (const auto& e : cross_edges) {
        if (e.parent >= weights.size() || e.child >= weights.size()) {
            throw std::invalid_argument("crossed_paths: edge endpoint out of range");
        }
        if (e.parent == e.child) throw std::invalid_argument("crossed_paths: self-loop");
        if (!present.insert(e).second) throw std::invalid_argument("crossed_paths: duplicate edge");
        edges.push_back(e);
    }
    auto instance = make_instance("crossed-paths-" + std::to_string(base.weights.size()) + "x" +
                                      std::to_string(cross_edges.size()),
                                  weights, edges);
    require_acyclic(instance, "crossed_paths");
    instance.family = tag(Family::crossed_paths, {{"paths", static_cast<std::int64_t>(base.weights.size())},
                                                  {"cross", static_cast<std::int64_t>(cross_edges.size())}});
    return instance;
}

DagInstance branching_paths(const PathsSpec& base, const std::vector<BranchSpec>& branches) {
    std::vector<Work> weights;
    std::vector<Edge> edges;
    lay_out_chains(base, weights, edges);
    const auto base_size = weights.size();
    for (const auto& branch : branches) {
        if (branch.attach >= base_size) {
            throw std::invalid_argument("branching_paths: attach vertex " +
                                        std::to_string(branch.attach) + " not in base");
        }
        VertexId previous = branch.attach;
        for (Work w : branch.weights) {
            if (w < 0) throw std::invalid_argument("branching_paths: negative weight");
            const auto id = static_cast<VertexId>(weights.size());
            weights.push_back(w);
            edges.push_back({previous, id});
            previous = id;
        }
    }
    auto instance = make_instance("branching-paths-" + std::to_string(base.weights.size()) + "x" +
                                      std::to_string(branches.size()),
                                  weights, edges);
    require_acyclic(instance, "branching_paths");
    instance.family = tag(Family::branching_paths, {{"paths", static_cast<std::int64_t>(base.weights.size())},
                                                    {"branches", static_cast<std::int64_t>(branches.size())}});
    return instance;
}

DagInstance random_layered_dag(std::uint64_t seed, int layers, int width, Work max_w,
                               Rational edge_prob) {
    if (layers < 1 || width < 1 || max_w < 0) {
        throw std::invalid_argument("random_layered_dag: layers and width must be positive");
    }
    if (edge_prob < Rational(0) || Rational(1) < edge_prob) {
        throw std::invalid_argument("random_layered_dag: edge_prob must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    const auto n = static_cast<std::size_t>(layers) * static_cast<std::size_t>(width);
    std::vector<Work> weights(n);
    for (auto& w : weights) w = draw(rng, 0, max_w);
    std::vector<Edge> edges;
    for (int layer = 1; layer < layers; ++layer) {
        for (int j = 0; j < width; ++j) {
            const auto child = static_cast<VertexId>(layer * width + j);
            bool has_parent = false;
            for (int i = 0; i < width; ++i) {
                if (bernoulli(rng, edge_prob)) {
                    edges.push_back({static_cast<VertexId>((layer - 1) * width + i), child});
                    has_parent = true;
                }
            }
            if (!has_parent) {
                const auto i = draw(rng, 0, width - 1);
                edges.push_back({static_cast<VertexId>((layer - 1) * width + i), child});
            }
        }
    }
    auto instance = make_instance("layered-s" + std::to_string(seed) + "-" + std::to_string(layers) +
                                      "x" + std::to_string(width),
                                  weights, edges);
    instance.family = tag(Family::random_layered,
                          {{"layers", layers},
                           {"width", width},
                           {"max_w", max_w},
                           {"p_num", edge_prob.num()},
                           {"p_den", edge_prob.den()}},
                          seed);
    return instance;
}

// ---------------------------------------------------------------------------

WeightFn parse_weight_fn(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    try {
        if (parts.size() == 2 && parts[0] == "const") return ConstantWeight{std::stoll(parts[1])};
        if (parts.size() == 2 && parts[0] == "codim") return CodimensionWeight{std::stoll(parts[1])};
        if (parts.size() == 3 && parts[0] == "random") {
            return SeededWeight{std::stoull(parts[1]), std::stoll(parts[2])};
        }
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("unknown weight function '" + text +
                                "' (const:<c>, codim:<scale>, random:<seed>:<max>)");
}

std::string weight_fn_name(const WeightFn& fn) {
    if (const auto* c = std::get_if<ConstantWeight>(&fn)) return "const:" + std::to_string(c->value);
    if (const auto* c = std::get_if<CodimensionWeight>(&fn)) return "codim:" + std::to_string(c->scale);
    const auto& s = std::get<SeededWeight>(fn);
    return "random:" + std::to_string(s.seed) + ":" + std::to_string(s.max);
}

DagInstance subset_lattice_atlas(int k, const WeightFn& weight_fn,
                                 const std::optional<LatticeSparsity>& sparsity) {
    if (k < 1 || k > 16) throw std::invalid_argument("subset_lattice_atlas: k must be in 1..16");
    const std::uint32_t count = std::uint32_t{1} << k;

    std::vector<bool> keep(count, true);
    if (sparsity) {
        std::mt19937_64 rng(sparsity->seed);
        for (std::uint32_t mask = 1; mask < count; ++mask) {
            bool parent_kept = false;
            for (int b = 0; b < k; ++b) {
                if ((mask >> b) & 1U) parent_kept = parent_kept || keep[mask & ~(1U << b)];
            }
            // Draw for every subset so the stream does not depend on earlier outcomes.
            const bool coin = bernoulli(rng, sparsity->keep);
            keep[mask] = parent_kept && coin;
        }
    }

    std::vector<VertexId> index(count, 0);
    std::vector<Work> weights;
    std::mt19937_64 weight_rng(std::holds_alternative<SeededWeight>(weight_fn)
                                   ? std::get<SeededWeight>(weight_fn).seed
                                   : 0);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        Work w = 0;
        if (const auto* c = std::get_if<ConstantWeight>(&weight_fn)) {
            w = c->value;
        } else if (const auto* c = std::get_if<CodimensionWeight>(&weight_fn)) {
            w = c->scale * (k - std::popcount(mask));
        } else {
            w = draw(weight_rng, 0, std::get<SeededWeight>(weight_fn).max);
        }
        if (!keep[mask]) continue;
        if (w < 0) throw std::invalid_argument("subset_lattice_atlas: negative weight");
        index[mask] = static_cast<VertexId>(weights.size());
        weights.push_back(w);
    }
    std::vector<Edge> edges;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        if (!keep[mask]) continue;
        for (int b = 0; b < k; ++b) {
            const std::uint32_t child = mask | (1U << b);
            if (child != mask && keep[child]) edges.push_back({index[mask], index[child]});
        }
    }
    auto instance = make_instance("lattice-k" + std::to_string(k) + "-" + weight_fn_name(weight_fn),
                                  weights, edges);
    std::vector<std::pair<std::string, std::int64_t>> params{{"k", k}};
    if (sparsity) {
        params.emplace_back("keep_num", sparsity->keep.num());
        params.emplace_back("keep_den", sparsity->keep.den());
    }
    instance.family = tag(Family::subset_lattice, std::move(params),
                          sparsity ? std::optional<std::uint64_t>(sparsity->seed) : std::nullopt);
    return instance;
}

// ---------------------------------------------------------------------------

namespace {

PathsSpec random_chains(std::mt19937_64& rng, int paths, int max_length, Work max_w) {
    if (paths < 1 || max_length < 1 || max_w < 0) {
        throw std::invalid_argument("random path family: paths and max_length must be positive");
    }
    PathsSpec spec;
    for (int i = 0; i < paths; ++i) {
        std::vector<Work> chain(static_cast<std::size_t>(draw(rng, 1, max_length)));
        for (auto& w : chain) w = draw(rng, 0, max_w);
        spec.weights.push_back(std::move(chain));
    }
    return spec;
}

}  // namespace

DagInstance random_disjoint_paths(std::uint64_t seed, int paths, int max_length, Work max_w) {
    std::mt19937_64 rng(seed);
    const auto spec = random_chains(rng, paths, max_length, max_w);
    std::vector<std::size_t> lengths;
    for (const auto& chain : spec.weights) lengths.push_back(chain.size());
    auto instance = disjoint_paths(lengths, spec);
    instance.name += "-s" + std::to_string(seed);
    instance.family->seed = seed;
    return instance;
}

DagInstance random_crossed_paths(std::uint64_t seed, int paths, int max_length, Work max_w,
                                 int cross_edges) {
    std::mt19937_64 rng(seed);
    const auto spec = random_chains(rng, paths, max_length, max_w);
    std::size_t n = 0;
    for (const auto& chain : spec.weights) n += chain.size();
    std::set<Edge> chosen;
    // Forward edges (lower id to higher id) cannot close a cycle because every
    // chain edge also points forward.
    std::set<Edge> chain_edges;
    {
        std::vector<Work> w;
        std::vector<Edge> e;
        lay_out_chains(spec, w, e);
        chain_edges.insert(e.begin(), e.end());
    }
    for (int attempt = 0; attempt < cross_edges * 8 && static_cast<int>(chosen.size()) < cross_edges &&
                          n >= 2;
         ++attempt) {
        auto a = static_cast<VertexId>(draw(rng, 0, static_cast<std::int64_t>(n) - 1));
        auto b = static_cast<VertexId>(draw(rng, 0, static_cast<std::int64_t>(n) - 1));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const Edge e{a, b};
        if (chain_edges.count(e)) continue;
        chosen.insert(e);
    }
    auto instance = crossed_paths(spec, std::vector<Edge>(chosen.begin(), chosen.end()));
    instance.name += "-s" + std::to_string(seed);
    instance.family->seed = seed;
    return instance;
}

DagInstance random_branching_paths(std::uint64_t seed, int paths, int max_length, Work max_w,
                                   int branches) {
    std::mt19937_64 rng(seed);
    const auto spec = random_chains(rng, paths, max_length, max_w);
    std::size_t n = 0;
    for (const auto& chain : spec.weights) n += chain.size();
    std::vector<BranchSpec> specs;
    for (int i = 0; i < branches; ++i) {
        BranchSpec branch;
        branch.attach = static_cast<VertexId>(draw(rng, 0, static_cast<std::int64_t>(n) - 1));
        branch.weights.resize(static_cast<std::size_t>(draw(rng, 1, max_length)));
        for (auto& w : branch.weights) w = draw(rng, 0, max_w);
        specs.push_back(std::move(branch));
    }
    auto instance = branching_paths(spec, specs);
    instance.name += "-s" + std::to_string(seed);
    instance.family->seed = seed;
    return instance;
}

}  // namespace staybusy
