#include "staybusy/validate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace staybusy {

namespace {

Violation make_violation(Rule rule, std::string message, std::optional<VertexId> vertex = {},
                         std::optional<TimeSlot> time = {},
                         std::optional<ProcessorId> processor = {}) {
    return Violation{rule, vertex, time, processor, std::move(message)};
}

}  // namespace

std::string_view to_string(Rule rule) {
    switch (rule) {
        case Rule::CYCLE: return "CYCLE";
        case Rule::VERTEX_ID: return "VERTEX_ID";
        case Rule::EDGE: return "EDGE";
        case Rule::WEIGHT: return "WEIGHT";
        case Rule::NO_SOURCE: return "NO_SOURCE";
        case Rule::SLOT_RANGE: return "SLOT_RANGE";
        case Rule::WORK_SUM: return "WORK_SUM";
        case Rule::PARENT_FIRST: return "PARENT_FIRST";
        case Rule::ONE_VERTEX_PER_PROC: return "ONE_VERTEX_PER_PROC";
        case Rule::CONTIGUOUS: return "CONTIGUOUS";
        case Rule::STAYBUSY: return "STAYBUSY";
    }
    return "UNKNOWN";
}

bool ValidationReport::has(Rule rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [rule](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
    if (valid()) return "valid";
    std::ostringstream out;
    out << violations.size() << " violation(s)";
    for (const auto& v : violations) {
        out << "\n  " << to_string(v.rule);
        if (v.vertex) out << " vertex=" << *v.vertex;
        if (v.time) out << " t=" << *v.time;
        if (v.processor) out << " p=" << *v.processor;
        out << ": " << v.message;
    }
    return out.str();
}

std::string_view to_string(ValidationMode mode) {
    switch (mode) {
        case ValidationMode::offline: return "offline";
        case ValidationMode::online: return "online";
        case ValidationMode::staybusy: return "staybusy";
    }
    return "offline";
}

std::optional<ValidationMode> parse_validation_mode(std::string_view text) {
    if (text == "offline") return ValidationMode::offline;
    if (text == "online") return ValidationMode::online;
    if (text == "staybusy") return ValidationMode::staybusy;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Work table helpers

std::int64_t WorkTable::occupied() const {
    std::int64_t count = 0;
    for (const auto& s : slots) count += static_cast<std::int64_t>(s.size());
    return count;
}

void WorkTable::normalize() {
    for (auto& s : slots) std::sort(s.begin(), s.end());
}

TimeSlot completion_time(const WorkTable& table) {
    TimeSlot last = 0;
    for (const auto& s : table.slots) {
        for (const auto& slot : s) last = std::max(last, slot.time);
    }
    return last;
}

std::int64_t total_idle(const WorkTable& table) {
    const TimeSlot horizon = completion_time(table);
    const std::int64_t r = table.processors;
    const std::int64_t by_formula = r * horizon - table.occupied();

    std::set<std::pair<TimeSlot, ProcessorId>> busy;
    for (const auto& s : table.slots) {
        for (const auto& slot : s) {
            if (slot.time >= 1 && slot.time <= horizon && slot.processor >= 1 &&
                slot.processor <= table.processors) {
                busy.emplace(slot.time, slot.processor);
            }
        }
    }
    const std::int64_t by_scan = r * horizon - static_cast<std::int64_t>(busy.size());
    if (by_formula != by_scan) {
        throw std::logic_error("total_idle: r*T - sum(w) = " + std::to_string(by_formula) +
                               " disagrees with slot count " + std::to_string(by_scan));
    }
    return by_scan;
}

// ---------------------------------------------------------------------------
// Instance validation

ValidationReport validate_instance(const DagInstance& instance) {
    ValidationReport report;
    const auto n = instance.size();

    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = instance.vertices[i];
        if (v.id != i) {
            report.violations.push_back(make_violation(
                Rule::VERTEX_ID,
                "vertex at position " + std::to_string(i) + " has id " + std::to_string(v.id),
                v.id));
        }
        if (v.weight < 0) {
            report.violations.push_back(
                make_violation(Rule::WEIGHT, "negative weight " + std::to_string(v.weight), v.id));
        }
    }

    std::set<Edge> seen;
    bool edges_in_range = true;
    for (const auto& e : instance.edges) {
        const std::string label =
            "(" + std::to_string(e.parent) + "," + std::to_string(e.child) + ")";
        if (e.parent >= n || e.child >= n) {
            report.violations.push_back(make_violation(Rule::EDGE, "edge " + label + " out of range"));
            edges_in_range = false;
            continue;
        }
        if (e.parent == e.child) {
            report.violations.push_back(make_violation(Rule::EDGE, "self-loop " + label, e.parent));
        }
        if (!seen.insert(e).second) {
            report.violations.push_back(make_violation(Rule::EDGE, "duplicate edge " + label, e.parent));
        }
    }

    if (edges_in_range && !topological_order(instance)) {
        report.violations.push_back(make_violation(Rule::CYCLE, "graph contains a cycle"));
    }
    if (n > 0 && sources(instance).empty()) {
        report.violations.push_back(make_violation(Rule::NO_SOURCE, "no vertex without parents"));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Work table validation

std::vector<TimeSlot> finish_times(const DagInstance& instance, const WorkTable& table) {
    const auto order = topological_order(instance);
    if (!order) throw std::invalid_argument("finish_times: instance is cyclic");
    if (table.vertex_count() != instance.size()) {
        throw std::invalid_argument("finish_times: vertex count mismatch");
    }
    const Adjacency adj(instance);
    std::vector<TimeSlot> finish(instance.size(), 0);
    for (VertexId v : *order) {
        const auto& s = table.slots[v];
        if (!s.empty()) {
            TimeSlot last = 0;
            for (const auto& slot : s) last = std::max(last, slot.time);
            finish[v] = last;
            continue;
        }
        TimeSlot ready = 0;
        if (!adj.is_source(v)) {
            ready = std::numeric_limits<TimeSlot>::max();
            for (VertexId u : adj.parents[v]) ready = std::min(ready, finish[u]);
        }
        finish[v] = ready;
    }
    return finish;
}

ValidationReport validate_work_table(const DagInstance& instance, const WorkTable& table,
                                     ValidationMode mode) {
    if (table.vertex_count() != instance.size()) {
        throw std::invalid_argument("work table covers " + std::to_string(table.vertex_count()) +
                                    " vertices, instance has " + std::to_string(instance.size()));
    }
    if (table.processors < 1) throw std::invalid_argument("work table needs r >= 1");

    ValidationReport report;
    const auto n = instance.size();
    const Adjacency adj(instance);

    // Slot bounds and per-(t,p) exclusivity.
    std::map<std::pair<TimeSlot, ProcessorId>, VertexId> owner;
    for (VertexId v = 0; v < n; ++v) {
        std::set<std::pair<TimeSlot, ProcessorId>> own;
        for (const auto& slot : table.slots[v]) {
            if (slot.time < 1 || slot.time > table.horizon || slot.processor < 1 ||
                slot.processor > table.processors) {
                report.violations.push_back(make_violation(Rule::SLOT_RANGE, "slot outside 1..T x 1..r",
                                                           v, slot.time, slot.processor));
                continue;
            }
            const auto key = std::make_pair(slot.time, slot.processor);
            if (!own.insert(key).second) {
                report.violations.push_back(make_violation(Rule::ONE_VERTEX_PER_PROC,
                                                           "slot listed twice for the same vertex",
                                                           v, slot.time, slot.processor));
                continue;
            }
            auto [it, inserted] = owner.emplace(key, v);
            if (!inserted) {
                report.violations.push_back(make_violation(
                    Rule::ONE_VERTEX_PER_PROC,
                    "processor already assigned to vertex " + std::to_string(it->second), v,
                    slot.time, slot.processor));
            }
        }
    }

    // (1) work sum.
    for (VertexId v = 0; v < n; ++v) {
        const auto have = static_cast<Work>(table.slots[v].size());
        if (have != instance.weight(v)) {
            report.violations.push_back(make_violation(
                Rule::WORK_SUM,
                "has " + std::to_string(have) + " slots, weight is " +
                    std::to_string(instance.weight(v)),
                v));
        }
    }

    // (2) some parent finishes no later than the child starts.
    const auto finish = finish_times(instance, table);
    std::vector<TimeSlot> start(n, std::numeric_limits<TimeSlot>::max());
    for (VertexId v = 0; v < n; ++v) {
        for (const auto& slot : table.slots[v]) start[v] = std::min(start[v], slot.time);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (adj.is_source(v) || table.slots[v].empty()) continue;
        const bool ok = std::any_of(adj.parents[v].begin(), adj.parents[v].end(),
                                    [&](VertexId u) { return finish[u] <= start[v]; });
        if (!ok) {
            report.violations.push_back(make_violation(
                Rule::PARENT_FIRST, "starts before any parent has completed", v, start[v]));
        }
    }

    if (mode == ValidationMode::offline) return report;

    // Simplified work table: one processor, one contiguous block.
    for (VertexId v = 0; v < n; ++v) {
        const auto& s = table.slots[v];
        if (s.empty()) continue;
        TimeSlot lo = s.front().time, hi = s.front().time;
        bool single_processor = true;
        for (const auto& slot : s) {
            lo = std::min(lo, slot.time);
            hi = std::max(hi, slot.time);
            single_processor = single_processor && slot.processor == s.front().processor;
        }
        if (!single_processor) {
            report.violations.push_back(
                make_violation(Rule::CONTIGUOUS, "processed on more than one processor", v));
        }
        if (hi - lo + 1 != static_cast<TimeSlot>(s.size())) {
            report.violations.push_back(
                make_violation(Rule::CONTIGUOUS, "slots do not form one contiguous block", v, lo));
        }
    }

    if (mode == ValidationMode::online) return report;

    // StayBusy: a ready, unstarted vertex at t forces every processor busy at t.
    const TimeSlot horizon = std::max(table.horizon, completion_time(table));
    std::vector<std::int64_t> busy(static_cast<std::size_t>(horizon) + 2, 0);
    for (const auto& [key, v] : owner) busy[static_cast<std::size_t>(key.first)]++;

    std::vector<TimeSlot> ready(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (adj.is_source(v)) continue;
        ready[v] = std::numeric_limits<TimeSlot>::max();
        for (VertexId u : adj.parents[v]) ready[v] = std::min(ready[v], finish[u]);
    }
    for (TimeSlot t = 1; t <= horizon; ++t) {
        if (busy[static_cast<std::size_t>(t)] >= table.processors) continue;
        for (VertexId v = 0; v < n; ++v) {
            if (table.slots[v].empty()) continue;
            if (ready[v] <= t - 1 && start[v] > t) {
                report.violations.push_back(make_violation(
                    Rule::STAYBUSY,
                    "ready vertex waits while " +
                        std::to_string(table.processors - busy[static_cast<std::size_t>(t)]) +
                        " processor(s) idle",
                    v, t));
                break;
            }
        }
    }
    return report;
}

}  // namespace staybusy
