#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/work_table.hpp"

namespace staybusy {

// Frontier disciplines for the ready set.
struct Fifo {};
struct Lifo {};
struct RandomPick {
    std::uint64_t seed = 0;
};
/// Adversary: lightest ready vertex first, so the heaviest is dispatched
/// last. Reads hidden weights, so it is not itself a legal online algorithm.
struct MaxWeightLast {};
/// Dispatch exactly in the given order (a permutation of vertex ids).
struct Scripted {
    std::vector<VertexId> order;
};

using FrontierPolicy = std::variant<Fifo, Lifo, RandomPick, MaxWeightLast, Scripted>;

std::string policy_name(const FrontierPolicy& policy);
/// Accepts fifo, lifo, random:<seed>, max-weight-last, scripted:<id>,<id>,...
/// Throws std::invalid_argument on anything else.
FrontierPolicy parse_policy(const std::string& text);

struct Dispatch {
    TimeSlot time = 0;  // first slot occupied
    VertexId vertex = 0;
    ProcessorId processor = 0;

    friend bool operator==(const Dispatch&, const Dispatch&) = default;
};

struct SimResult {
    WorkTable table;
    TimeSlot completion = 0;
    std::vector<Dispatch> dispatches;
    std::int64_t idle = 0;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Event-driven StayBusy run. A vertex becomes ready once its first parent
/// completes; every free processor takes a ready vertex as soon as one
/// exists. Completions at the same instant are handled in processor order
/// and newly ready vertices are inserted in id order.
/// Throws std::invalid_argument for r < 1, a cyclic instance, or a scripted
/// order that is not a permutation or names a vertex before it is ready.
SimResult simulate(const DagInstance& instance, int r, const FrontierPolicy& policy);

/// {"T": int, "idle": int, "policy": str, "r": int}
std::string sim_sidecar_json(const SimResult& result, int r, const FrontierPolicy& policy);

}  // namespace staybusy
