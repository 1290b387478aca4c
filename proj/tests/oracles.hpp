#pragma once

// Reference computations used only by tests. Each one takes a different route
// from the library code it checks.

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "staybusy/instance.hpp"
#include "staybusy/simulate.hpp"
#include "staybusy/work_table.hpp"

namespace staybusy::oracle {

/// Minimum path work by enumerating every source-to-v path with DFS.
inline std::vector<Work> enumerate_min_path_work(const DagInstance& instance) {
    const Adjacency adj(instance);
    const auto n = instance.size();
    std::vector<Work> best(n, std::numeric_limits<Work>::max());
    std::vector<VertexId> path;
    auto dfs = [&](auto&& self, VertexId v, Work acc) -> void {
        acc += instance.weight(v);
        best[v] = std::min(best[v], acc);
        for (VertexId c : adj.children[v]) self(self, c, acc);
    };
    for (VertexId v = 0; v < n; ++v) {
        if (adj.is_source(v)) dfs(dfs, v, 0);
    }
    return best;
}

/// Idle (t, p) cells counted on an explicit r x T grid.
inline std::int64_t grid_idle(const WorkTable& table) {
    TimeSlot horizon = 0;
    for (const auto& s : table.slots)
        for (const auto& slot : s) horizon = std::max(horizon, slot.time);
    std::vector<std::vector<bool>> grid(static_cast<std::size_t>(horizon),
                                        std::vector<bool>(static_cast<std::size_t>(table.processors)));
    for (const auto& s : table.slots)
        for (const auto& slot : s) grid[slot.time - 1][slot.processor - 1] = true;
    std::int64_t idle = 0;
    for (const auto& row : grid) idle += std::count(row.begin(), row.end(), false);
    return idle;
}

/// Worst StayBusy completion time by simulating every dispatch order as a
/// scripted policy. Orders that are not realizable are rejected by the
/// simulator and skipped. Practical for |V| <= 8.
inline Work worst_over_permutations(const DagInstance& instance, int r) {
    std::vector<VertexId> order(instance.size());
    std::iota(order.begin(), order.end(), 0);
    Work worst = 0;
    do {
        try {
            worst = std::max(worst, simulate(instance, r, Scripted{order}).completion);
        } catch (const std::invalid_argument&) {
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return worst;
}

/// Random valid offline (preemptive, migratory) table: each step gives up to
/// r random ready vertices one unit each on random distinct processors.
inline WorkTable random_offline_table(const DagInstance& instance, int r, std::mt19937_64& rng) {
    const Adjacency adj(instance);
    const auto n = instance.size();
    std::vector<Work> remaining(n);
    std::vector<bool> ready(n, false), done(n, false);
    std::size_t done_count = 0;
    for (VertexId v = 0; v < n; ++v) remaining[v] = instance.weight(v);
    auto reach = [&](auto&& self, VertexId v) -> void {
        if (ready[v]) return;
        ready[v] = true;
        if (remaining[v] == 0) {
            done[v] = true;
            ++done_count;
            for (VertexId c : adj.children[v]) self(self, c);
        }
    };
    for (VertexId v = 0; v < n; ++v)
        if (adj.is_source(v)) reach(reach, v);

    WorkTable table(n, r);
    TimeSlot t = 0;
    while (done_count < n) {
        ++t;
        std::vector<VertexId> candidates;
        for (VertexId v = 0; v < n; ++v)
            if (ready[v] && !done[v]) candidates.push_back(v);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        // Leave processors idle now and then; offline tables need not be busy.
        std::size_t take = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(r));
        if (take > 1 && rng() % 4 == 0) --take;
        std::vector<ProcessorId> procs(static_cast<std::size_t>(r));
        std::iota(procs.begin(), procs.end(), 1);
        std::shuffle(procs.begin(), procs.end(), rng);
        std::vector<VertexId> finished;
        for (std::size_t i = 0; i < take; ++i) {
            const VertexId v = candidates[i];
            table.slots[v].push_back({t, procs[i]});
            if (--remaining[v] == 0) finished.push_back(v);
        }
        for (VertexId v : finished) {
            done[v] = true;
            ++done_count;
        }
        for (VertexId v : finished)
            for (VertexId c : adj.children[v]) reach(reach, c);
    }
    table.horizon = std::max<TimeSlot>(t, 1);
    table.normalize();
    return table;
}

}  // namespace staybusy::oracle
