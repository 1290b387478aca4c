#include <doctest.h>

#include <atomic>
#include <thread>

#include "executor_checks.hpp"
#include "fixtures.hpp"
#include "staybusy/actor_exec.hpp"

using namespace staybusy;
using namespace std::chrono_literals;

TEST_CASE("mailbox delivers in order across threads") {
    Mailbox<int> box;
    std::thread producer([&] {
        for (int i = 0; i < 1000; ++i) box.send(i);
    });
    bool ordered = true;
    for (int i = 0; i < 1000; ++i) ordered = ordered && box.receive() == i;
    producer.join();
    CHECK(ordered);
}

TEST_CASE("stress: exactly once, conserving, valid quantized tables") {
    std::uint64_t seed = 1;
    for (const auto& instance : checks::stress_instances())
        for (int r : {1, 2, 4, 8})
            for (int rep = 0; rep < 3; ++rep) {
                const auto problem = checks::stress_run(instance, r, seed++);
                CHECK_MESSAGE(problem.empty(), problem);
            }
}

TEST_CASE("shared children are processed once") {
    // Every vertex of the lattice past the first layer has several parents.
    const auto instance = subset_lattice_atlas(4, ConstantWeight{0});
    const auto workload = to_workload(instance, 1us);
    const auto result = run(*workload, 4);
    CHECK(result.keys.size() == 16);
    // 32 edges reach 15 non-root vertices; the other 17 reports are duplicates.
    CHECK(trace_stats(result.trace).dedup_hits == 17);
}

TEST_CASE("a failing vertex yields a partial run") {
    // 0 -> 1 -> 2 and 0 -> 3
    const auto instance = make_instance("fail", {1, 1, 1, 1}, {{0, 1}, {1, 2}, {0, 3}});
    SyntheticOptions options;
    options.failing = {1};
    const auto workload = to_workload(instance, 10us, options);
    const auto result = run(*workload, 2);
    CHECK(result.partial());
    CHECK(result.failed == std::vector<std::uint64_t>{1});
    CHECK(result.keys == std::vector<std::uint64_t>{0, 1, 3});
}

TEST_CASE("run input errors") {
    const auto workload = to_workload(fixtures::diamond(), 1us);
    CHECK_THROWS_AS(run(*workload, 0), std::invalid_argument);
    SyntheticOptions bad;
    bad.root_order = std::vector<VertexId>{1};
    CHECK_THROWS_AS(to_workload(fixtures::diamond(), 1us, bad), std::invalid_argument);
}

TEST_CASE("quantized weights track the nominal weights") {
    // Wall-clock spin with one worker: each interval is w(v) units long up to
    // rounding, so the slot count is within one of w(v).
    const auto instance = fixtures::chain({3, 1, 4, 1, 5});
    const auto unit = 4ms;
    const auto workload = to_workload(instance, unit, clock_only(SpinClock::wall));
    const auto result = run(*workload, 1);
    const auto quantized = quantize_run(result, unit);
    for (VertexId v = 0; v < instance.size(); ++v) {
        CHECK(quantized.instance.weight(v) >= instance.weight(v) - 1);
        CHECK(quantized.instance.weight(v) <= instance.weight(v) + 1);
    }
    CHECK(validate_work_table(quantized.instance, quantized.table, ValidationMode::online).valid());
}

TEST_CASE("trace_to_work_table") {
    using K = TraceKind;
    SUBCASE("rounding keeps order and gives every interval a slot") {
        const Trace trace{
            {0, K::ENQUEUE, 7, kCoordinator},  {1, K::DISPATCH, 7, 0}, {10, K::COMPLETE, 7, 0},
            {11, K::ENQUEUE, 9, 0},            {12, K::DISPATCH, 9, 1}, {2500, K::COMPLETE, 9, 1},
        };
        const auto table = trace_to_work_table(trace, 1000ns);
        CHECK(table.processors == 2);
        CHECK(table.slots[0] == std::vector<Slot>{{1, 1}});
        CHECK(table.slots[1] == std::vector<Slot>{{2, 2}, {3, 2}});
    }

    SUBCASE("malformed traces") {
        CHECK_THROWS_AS(trace_to_work_table({{0, K::DISPATCH, 1, 0}}, 1ns), std::invalid_argument);
        CHECK_THROWS_AS(trace_to_work_table({{0, K::ENQUEUE, 1, -1}, {1, K::COMPLETE, 1, 0}}, 1ns),
                        std::invalid_argument);
        CHECK_THROWS_AS(trace_to_work_table({{0, K::ENQUEUE, 1, -1},
                                             {1, K::DISPATCH, 1, 0},
                                             {2, K::COMPLETE, 1, 0},
                                             {3, K::COMPLETE, 1, 0}},
                                            1ns),
                        std::invalid_argument);
    }
}

TEST_CASE("check_work_conserving flags a queued vertex beside an idle worker") {
    using K = TraceKind;
    const Trace bad{
        {0, K::ENQUEUE, 0, kCoordinator}, {1, K::WORKER_IDLE, 0, 1}, {2, K::DISPATCH, 0, 0},
        {3, K::ENQUEUE, 1, kCoordinator}, {5, K::COMPLETE, 0, 0},    {6, K::DISPATCH, 1, 1},
    };
    const auto report = check_work_conserving(bad);
    CHECK(report.has(Rule::STAYBUSY));
}

TEST_CASE("trace JSON lines round trip") {
    const auto workload = to_workload(fixtures::diamond(), 5us);
    const auto result = run(*workload, 2);
    const auto text = trace_to_jsonl(result.trace);
    CHECK(trace_from_jsonl(text) == result.trace);
    CHECK(text.substr(0, text.find('\n')).find("\"kind\":\"ENQUEUE\"") != std::string::npos);
    CHECK_THROWS(trace_from_jsonl("{\"ts_ns\":1,\"kind\":\"NOPE\",\"key\":0,\"worker\":0}\n"));
    for (auto kind : {TraceKind::DISPATCH, TraceKind::COMPLETE, TraceKind::ENQUEUE, TraceKind::DEDUP_HIT,
                      TraceKind::WORKER_IDLE, TraceKind::SHUTDOWN})
        CHECK(parse_trace_kind(to_string(kind)) == kind);
}
