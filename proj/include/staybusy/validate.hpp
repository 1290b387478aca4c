#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/work_table.hpp"

namespace staybusy {

enum class Rule {
    // Instance rules.
    CYCLE,
    VERTEX_ID,
    EDGE,
    WEIGHT,
    NO_SOURCE,
    // Work-table rules.
    SLOT_RANGE,
    WORK_SUM,
    PARENT_FIRST,
    ONE_VERTEX_PER_PROC,
    CONTIGUOUS,
    STAYBUSY,
};

std::string_view to_string(Rule rule);

struct Violation {
    Rule rule;
    std::optional<VertexId> vertex;
    std::optional<TimeSlot> time;
    std::optional<ProcessorId> processor;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
    bool has(Rule rule) const;
    std::string summary() const;
};

enum class ValidationMode { offline, online, staybusy };

std::string_view to_string(ValidationMode mode);
std::optional<ValidationMode> parse_validation_mode(std::string_view text);

ValidationReport validate_instance(const DagInstance& instance);

/// Checks a work table against the constraints of the requested mode.
/// online adds single-processor contiguous blocks; staybusy adds online plus
/// "no ready vertex waits while a processor is idle".
/// Throws std::invalid_argument when the table's vertex count differs from
/// the instance, or the instance itself is cyclic.
ValidationReport validate_work_table(const DagInstance& instance, const WorkTable& table,
                                     ValidationMode mode);

/// Finish time of every vertex under the table: last occupied slot for
/// weighted vertices, and for zero-weight vertices the moment they become
/// ready (earliest parent finish, 0 for sources). Requires an acyclic
/// instance whose vertex count matches the table.
std::vector<TimeSlot> finish_times(const DagInstance& instance, const WorkTable& table);

}  // namespace staybusy
