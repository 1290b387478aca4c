#include <doctest.h>

#include <bit>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "staybusy/generators.hpp"
#include "staybusy/io.hpp"
#include "staybusy/offline.hpp"
#include "staybusy/validate.hpp"

#ifndef STAYBUSY_GOLDEN_DIR
#error "STAYBUSY_GOLDEN_DIR must be defined"
#endif

using namespace staybusy;

TEST_CASE("lemma_worst_case") {
    const auto instance = lemma_worst_case(4, 8);
    CHECK(instance.name == "lemma-r4-t8");
    CHECK(instance.size() == 5);
    CHECK(instance.edges.empty());
    CHECK(instance.weight(0) == 8);
    for (VertexId v = 1; v <= 4; ++v) CHECK(instance.weight(v) == 6);
    REQUIRE(instance.family.has_value());
    CHECK(instance.family->family == "LEMMA_WORST");
    CHECK(*instance.family->param("r") == 4);
    CHECK(*instance.family->param("tstar") == 8);

    CHECK_THROWS_AS(lemma_worst_case(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(lemma_worst_case(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(lemma_worst_case(3, 0), std::invalid_argument);
}

TEST_CASE("path families") {
    SUBCASE("disjoint") {
        const auto instance = disjoint_paths({2, 1}, PathsSpec{{{3, 4}, {5}}});
        CHECK(instance.size() == 3);
        CHECK(instance.edges == std::vector<Edge>{{0, 1}});
        CHECK(sources(instance) == std::vector<VertexId>{0, 2});
        CHECK_THROWS_AS(disjoint_paths({3}, PathsSpec{{{1, 2}}}), std::invalid_argument);
    }

    SUBCASE("crossed") {
        const PathsSpec base{{{1, 1}, {2, 2}}};
        const auto instance = crossed_paths(base, {{0, 3}});
        CHECK(instance.edges.size() == 3);
        CHECK(min_path_work(instance).path_work[3] == 3);  // 1 + 2 beats 2 + 2
        CHECK_THROWS_AS(crossed_paths(base, {{1, 0}}), std::invalid_argument);  // closes a cycle
        CHECK_THROWS_AS(crossed_paths(base, {{0, 1}}), std::invalid_argument);  // duplicate
        CHECK_THROWS_AS(crossed_paths(base, {{0, 9}}), std::invalid_argument);
    }

    SUBCASE("branching") {
        const auto instance = branching_paths(PathsSpec{{{1, 1, 1}}}, {BranchSpec{1, {4, 4}}});
        CHECK(instance.size() == 5);
        const Adjacency adj(instance);
        CHECK(adj.parents[3] == std::vector<VertexId>{1});
        CHECK(adj.parents[4] == std::vector<VertexId>{3});
        CHECK(min_path_work(instance).path_work[4] == 10);
    }

    SUBCASE("random members are valid DAGs") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            CHECK(validate_instance(random_disjoint_paths(seed, 3, 5, 4)).valid());
            CHECK(validate_instance(random_crossed_paths(seed, 3, 5, 4, 6)).valid());
            CHECK(validate_instance(random_branching_paths(seed, 3, 5, 4, 3)).valid());
        }
    }
}

TEST_CASE("random_layered_dag") {
    SUBCASE("frozen output") {
        std::ifstream in(std::string(STAYBUSY_GOLDEN_DIR) + "/layered_s7_l4_w4_m5.json", std::ios::binary);
        REQUIRE(in.good());
        std::stringstream golden;
        golden << in.rdbuf();
        CHECK(instance_to_json(random_layered_dag(7, 4, 4, 5, Rational(1, 2))) == golden.str());
    }

    SUBCASE("structure") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const int layers = 1 + static_cast<int>(seed % 5), width = 1 + static_cast<int>(seed % 4);
            const auto instance = random_layered_dag(seed, layers, width, 6, Rational(1, 3));
            CHECK(instance.size() == static_cast<std::size_t>(layers * width));
            CHECK(validate_instance(instance).valid());
            for (const auto& e : instance.edges)
                CHECK(static_cast<int>(e.child) / width == static_cast<int>(e.parent) / width + 1);
            const Adjacency adj(instance);
            for (VertexId v = 0; v < instance.size(); ++v) {
                CHECK(adj.is_source(v) == (static_cast<int>(v) < width));
                CHECK(instance.weight(v) >= 0);
                CHECK(instance.weight(v) <= 6);
            }
        }
    }

    SUBCASE("seed matters, repeat does not") {
        CHECK(random_layered_dag(1, 4, 4, 5, Rational(1, 2)) == random_layered_dag(1, 4, 4, 5, Rational(1, 2)));
        CHECK_FALSE(random_layered_dag(1, 4, 4, 5, Rational(1, 2)) ==
                    random_layered_dag(2, 4, 4, 5, Rational(1, 2)));
    }
}

TEST_CASE("subset_lattice_atlas") {
    SUBCASE("k=4 full lattice: 2^4 vertices, 4 * 2^3 edges") {
        const auto instance = subset_lattice_atlas(4, ConstantWeight{1});
        CHECK(instance.size() == 16);
        CHECK(instance.edges.size() == 32);
        CHECK(sources(instance) == std::vector<VertexId>{0});
        for (const auto& e : instance.edges) {
            CHECK(std::popcount(e.child) == std::popcount(e.parent) + 1);
            CHECK((e.child & e.parent) == e.parent);
        }
    }

    SUBCASE("codimension weights, k=3: 3 + 3*2 + 3*1 + 0 = 12") {
        const auto instance = subset_lattice_atlas(3, CodimensionWeight{1});
        CHECK(instance.total_work() == 12);
        CHECK(instance.weight(0) == 3);
        CHECK(instance.weight(7) == 0);
        // W(full set) = 3 + 2 + 1 + 0
        CHECK(min_path_work(instance).path_work[7] == 6);
    }

    SUBCASE("sparse lattice stays reachable from the root") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto instance = subset_lattice_atlas(5, SeededWeight{seed, 4}, LatticeSparsity{seed, Rational(1, 2)});
            CHECK(validate_instance(instance).valid());
            CHECK(sources(instance).size() == 1);
            CHECK(instance.size() <= 32);
        }
    }

    SUBCASE("keep=1 is the full lattice") {
        const auto full = subset_lattice_atlas(3, ConstantWeight{2});
        const auto kept = subset_lattice_atlas(3, ConstantWeight{2}, LatticeSparsity{5, Rational(1)});
        CHECK(kept.vertices == full.vertices);
        CHECK(kept.edges == full.edges);
    }

    CHECK_THROWS_AS(subset_lattice_atlas(0, ConstantWeight{1}), std::invalid_argument);
    CHECK_THROWS_AS(subset_lattice_atlas(17, ConstantWeight{1}), std::invalid_argument);
}

TEST_CASE("weight functions and family names") {
    for (const auto& text : {"const:3", "codim:2", "random:9:5"})
        CHECK(weight_fn_name(parse_weight_fn(text)) == text);
    CHECK_THROWS_AS(parse_weight_fn("cube:1"), std::invalid_argument);

    for (auto f : {Family::lemma_worst, Family::uniform_sources, Family::disjoint_paths, Family::crossed_paths,
                   Family::branching_paths, Family::random_layered, Family::subset_lattice})
        CHECK(parse_family(family_name(f)) == f);
    CHECK_FALSE(parse_family("NOPE").has_value());
}

TEST_CASE("generator output is repeatable byte for byte") {
    const auto a = fixtures::family_corpus(123, 5);
    const auto b = fixtures::family_corpus(123, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(validate_instance(a[i]).valid());
        CHECK(instance_to_json(a[i]) == instance_to_json(b[i]));
    }
}
