#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "staybusy/frontier.hpp"
#include "staybusy/offline.hpp"
#include "staybusy/simulate.hpp"
#include "staybusy/validate.hpp"
#include "staybusy/worst_case.hpp"

using namespace staybusy;

namespace {

std::vector<FrontierPolicy> all_policies(std::uint64_t seed) {
    return {Fifo{}, Lifo{}, RandomPick{seed}, MaxWeightLast{}};
}

}  // namespace

TEST_CASE("frontier disciplines") {
    const auto instance = make_instance("w", {5, 1, 3, 1}, {});
    auto drain = [&](FrontierPolicy policy) {
        Frontier frontier(instance, policy);
        for (VertexId v : {2, 0, 3, 1}) frontier.push(v);
        std::vector<VertexId> out;
        while (!frontier.empty()) out.push_back(frontier.pop());
        return out;
    };
    CHECK(drain(Fifo{}) == std::vector<VertexId>{2, 0, 3, 1});
    CHECK(drain(Lifo{}) == std::vector<VertexId>{1, 3, 0, 2});
    CHECK(drain(MaxWeightLast{}) == std::vector<VertexId>{1, 3, 2, 0});
    const auto random = drain(RandomPick{3});
    CHECK(random == drain(RandomPick{3}));
    auto sorted = random;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("policy names") {
    for (const auto& text : {"fifo", "lifo", "random:42", "max-weight-last", "scripted:2,0,1"}) {
        CHECK(policy_name(parse_policy(text)) == text);
    }
    CHECK_THROWS_AS(parse_policy("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy("random:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_policy("scripted:1,,2"), std::invalid_argument);
}

TEST_CASE("simulate on the lemma instances") {
    SUBCASE("r=2: the heavy vertex last gives 3") {
        const auto result = simulate(fixtures::lemma_r2(), 2, MaxWeightLast{});
        CHECK(result.completion == 3);
        CHECK(result.idle == 2);
        CHECK(result.table == fixtures::lemma_r2_nonoptimal());
        CHECK(simulate(fixtures::lemma_r2(), 2, Fifo{}).completion == 2);
    }

    SUBCASE("r=4 under each policy") {
        const auto instance = fixtures::lemma_r4();
        CHECK(simulate(instance, 4, Fifo{}).completion == 6);
        CHECK(simulate(instance, 4, Lifo{}).completion == 7);
        const auto mwl = simulate(instance, 4, MaxWeightLast{});
        CHECK(mwl.completion == 7);
        CHECK(mwl.idle == 12);
        CHECK(validate_work_table(instance, mwl.table, ValidationMode::staybusy).valid());
    }
}

TEST_CASE("scripted orders") {
    const auto instance = fixtures::diamond();
    const auto result = simulate(instance, 1, Scripted{{0, 2, 1, 3}});
    CHECK(result.dispatches ==
          std::vector<Dispatch>{{1, 0, 1}, {2, 2, 1}, {3, 1, 1}, {13, 3, 1}});
    CHECK_THROWS_AS(simulate(instance, 1, Scripted{{0, 3, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(simulate(instance, 1, Scripted{{0, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(simulate(instance, 1, Scripted{{0, 1, 1, 2}}), std::invalid_argument);
}

TEST_CASE("simulate input errors") {
    CHECK_THROWS_AS(simulate(fixtures::diamond(), 0, Fifo{}), std::invalid_argument);
    CHECK_THROWS_AS(simulate(make_instance("c", {1, 1}, {{0, 1}, {1, 0}}), 1, Fifo{}),
                    std::invalid_argument);
    const auto empty = simulate(DagInstance{}, 2, Fifo{});
    CHECK(empty.completion == 0);
    CHECK(empty.idle == 0);
}

TEST_CASE("sidecar") {
    const auto result = simulate(fixtures::lemma_r4(), 4, MaxWeightLast{});
    CHECK(sim_sidecar_json(result, 4, MaxWeightLast{}) ==
          "{\n  \"T\": 7,\n  \"idle\": 12,\n  \"policy\": \"max-weight-last\",\n  \"r\": 4\n}\n");
}

TEST_CASE("property: simulator tables are StayBusy, bounded, and repeatable") {
    std::mt19937_64 rng(314);
    for (const auto& instance : fixtures::family_corpus(17, 6)) {
        const auto map = min_path_work(instance);
        for (int r : {1, 2, 3, 4, 8}) {
            for (const auto& policy : all_policies(rng())) {
                const auto result = simulate(instance, r, policy);
                const auto report = validate_work_table(instance, result.table, ValidationMode::staybusy);
                REQUIRE_MESSAGE(report.valid(), instance.name, " r=", r, " ", policy_name(policy), " ",
                                report.summary());
                CHECK(r * result.completion <=
                      instance.total_work() + (r - 1) * map.max_path_work());
                CHECK(result.idle == r * result.completion - instance.total_work());
                CHECK(simulate(instance, r, policy) == result);
                if (r == 1) CHECK(result.completion == instance.total_work());
                if (static_cast<std::size_t>(r) >= instance.size())
                    CHECK(result.completion == map.max_path_work());
            }
        }
    }
}

TEST_CASE("exhaustive worst case") {
    SUBCASE("lemma r=3 matches the permutation oracle") {
        const auto instance = lemma_worst_case(3, 3);
        CHECK(oracle::worst_over_permutations(instance, 3) == 5);
        CHECK(exhaustive_worst_case(instance, 3) == 5);
        CHECK(*lemma_closed_form(instance, 3) == 5);
    }

    SUBCASE("closed form only for a matching tag") {
        CHECK_FALSE(lemma_closed_form(lemma_worst_case(3, 3), 2).has_value());
        CHECK_FALSE(lemma_closed_form(fixtures::diamond(), 2).has_value());
        CHECK(*lemma_closed_form(lemma_worst_case(8, 16), 8) == 30);
    }

    SUBCASE("exhaustive equals closed form for r <= 4") {
        for (int r = 2; r <= 4; ++r)
            for (Work t : {Work(r), Work(2 * r)}) {
                const auto instance = lemma_worst_case(r, t);
                CHECK(exhaustive_worst_case(instance, r) == *lemma_closed_form(instance, r));
            }
    }

    SUBCASE("random instances agree with the oracle, in either branch order") {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 150; ++i) {
            const auto instance = fixtures::random_small_dag(rng, 1 + rng() % 7, 4, 30);
            const int r = 1 + static_cast<int>(rng() % 3);
            const auto worst = exhaustive_worst_case(instance, r);
            CHECK(worst == oracle::worst_over_permutations(instance, r));
            CHECK(worst == exhaustive_worst_case(instance, r, BranchOrder::lifo));
            for (const auto& policy : all_policies(rng()))
                CHECK(simulate(instance, r, policy).completion <= worst);
        }
    }

    SUBCASE("size limit") {
        CHECK_THROWS_AS(exhaustive_worst_case(uniform_sources(11, 1), 2), std::invalid_argument);
        CHECK(worst_case_online(lemma_worst_case(16, 16), 16).method == WorstCaseMethod::closed_form);
        CHECK_THROWS_AS(worst_case_online(uniform_sources(11, 1), 2), std::invalid_argument);
    }
}

TEST_CASE("competitive ratio") {
    CHECK(competitive_ratio(fixtures::lemma_r2(), 2) == Rational(3, 2));
    CHECK(competitive_ratio(fixtures::lemma_r4(), 4) == Rational(7, 4));
    CHECK(competitive_ratio(uniform_sources(3, 0), 2) == Rational(1));
    for (int r = 1; r <= 8; ++r) CHECK(competitive_bound(r) == Rational(2 * r - 1, r));

    // Five equal sources on two processors: 18 / 15 exhaustively; the quoted
    // formula gives 3/2, which still respects the bound.
    const auto five = uniform_sources(5, 6);
    CHECK(exhaustive_worst_case(five, 2) == 18);
    CHECK(competitive_ratio(five, 2) == Rational(6, 5));
    CHECK(uniform_sources_ratio_formula(5, 2) == Rational(3, 2));
    CHECK(uniform_sources_ratio_formula(5, 2) <= competitive_bound(2));
    CHECK(uniform_sources_ratio_formula(9, 4) == Rational(7, 4));
}

TEST_CASE("rational") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(4, 2).str() == "2/1");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7, 4).to_double() == doctest::Approx(1.75));
}
