#pragma once

#include <cstdint>
#include <vector>

#include "staybusy/instance.hpp"

namespace staybusy {

using TimeSlot = std::int64_t;
using ProcessorId = std::int32_t;

/// One unit of work: time slot t in 1..T on processor p in 1..r.
struct Slot {
    TimeSlot time = 0;
    ProcessorId processor = 0;

    friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// Per-vertex assignment of (time, processor) slots. Unlisted slots are idle.
struct WorkTable {
    TimeSlot horizon = 0;
    ProcessorId processors = 1;
    std::vector<std::vector<Slot>> slots;  // indexed by vertex, sorted by time

    WorkTable() = default;
    WorkTable(std::size_t vertex_count, ProcessorId r, TimeSlot horizon = 0)
        : horizon(horizon), processors(r), slots(vertex_count) {}

    std::size_t vertex_count() const { return slots.size(); }
    std::int64_t occupied() const;

    /// Sorts every vertex's slots by (time, processor).
    void normalize();

    friend bool operator==(const WorkTable&, const WorkTable&) = default;
};

/// Largest occupied time slot; 0 for a table with no occupied slots.
TimeSlot completion_time(const WorkTable& table);

/// Processor-idle count over 1..completion_time. Computed both as
/// r*T - occupied and by scanning the grid; throws std::logic_error if the
/// two disagree (which only happens when slots collide).
std::int64_t total_idle(const WorkTable& table);

}  // namespace staybusy
